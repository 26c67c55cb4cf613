#pragma once

#include "strata/integer.hpp"

#include <string>
#include <vector>

namespace strata {

/// Integer polynomial in the indeterminate p, dense by degree.
class Poly {
 public:
  Poly() = default;
  Poly(long long c);  // NOLINT: constants convert implicitly
  Poly(Int c);        // NOLINT
  static Poly p_power(unsigned k, const Int& coefficient = 1);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Int>& coefficients() const { return coeffs_; }
  Int coefficient(unsigned k) const;

  Int evaluate(const Int& p) const;
  /// q(x) = this(x + t).
  Poly shifted(long long t) const;
  /// The coefficients of this(q + 2) are nonnegative and not all zero, so the
  /// polynomial is nonnegative for p >= 2 and not identically zero.
  bool positive_for_p_at_least_2() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

  /// "p^3 - p", "2*p^2 + 1", "0".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

Poly pow(const Poly& base, unsigned k);

}  // namespace strata
