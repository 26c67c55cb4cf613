#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace strata {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer vector in Z^n. Weights, linear forms and generators all use it.
using Vec = std::vector<Int>;
using Weight = Vec;
using Matrix = std::vector<Vec>;

Int dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);

/// gcd of the entries; zero for the zero vector.
Int content(const Vec& v);

/// Divides by the content, keeping the sign. The zero vector is returned unchanged.
Vec primitive(Vec v);

Vec negated(Vec v);
Vec unit_vector(int n, int i);  // i is 1-based

Int ipow(const Int& base, unsigned exponent);
int sign(const Int& x);

/// Lexicographic order on equal-length vectors.
std::strong_ordering lex_compare(const Vec& a, const Vec& b);
struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const { return lex_compare(a, b) < 0; }
};

/// "(1,-3,0)"
std::string to_string(const Vec& v);
std::vector<std::string> to_decimal_strings(const Vec& v);
Vec from_decimal_strings(const std::vector<std::string>& s);

}  // namespace strata
