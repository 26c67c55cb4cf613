#include "strata/poly.hpp"

#include <algorithm>

namespace strata {

Poly::Poly(long long c) : Poly(Int(c)) {}

Poly::Poly(Int c) {
  if (!c.is_zero()) coeffs_.push_back(std::move(c));
}

Poly Poly::p_power(unsigned k, const Int& coefficient) {
  Poly out;
  if (coefficient.is_zero()) return out;
  out.coeffs_.assign(k + 1, Int(0));
  out.coeffs_[k] = coefficient;
  return out;
}

Int Poly::coefficient(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Int(0); }

Int Poly::evaluate(const Int& p) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + *it;
  return acc;
}

Poly Poly::shifted(long long t) const {
  // Horner in the ring of polynomials: ((c_d) x' + c_{d-1}) x' + ... with x' = x + t.
  const Poly linear = Poly::p_power(1) + Poly(t);
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * linear + Poly(*it);
  return acc;
}

bool Poly::positive_for_p_at_least_2() const {
  const Poly q = shifted(2);
  if (q.is_zero()) return false;
  return std::all_of(q.coeffs_.begin(), q.coeffs_.end(), [](const Int& c) { return c >= 0; });
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (Int& c : out.coeffs_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Int(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  out.trim();
  return out;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Int& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const Int mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    const bool unit = (mag == 1);
    if (k == 0) {
      out += mag.str();
      continue;
    }
    if (!unit) out += mag.str() + "*";
    out += (k == 1) ? std::string("p") : "p^" + std::to_string(k);
  }
  return out;
}

Poly pow(const Poly& base, unsigned k) {
  Poly result(1);
  for (unsigned i = 0; i < k; ++i) result = result * base;
  return result;
}

}  // namespace strata
