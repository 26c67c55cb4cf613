#include "strata/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace strata {

Int dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  }
  return acc;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x.is_zero(); });
}

Int content(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) {
    if (x.is_zero()) continue;
    g = g.is_zero() ? Int(abs(x)) : Int(boost::multiprecision::gcd(g, x));
    if (g == 1) break;
  }
  return g;
}

Vec primitive(Vec v) {
  Int g = content(v);
  if (g > 1) {
    for (Int& x : v) x /= g;
  }
  return v;
}

Vec negated(Vec v) {
  for (Int& x : v) x = -x;
  return v;
}

Vec unit_vector(int n, int i) {
  Vec v(static_cast<std::size_t>(n), Int(0));
  v.at(static_cast<std::size_t>(i - 1)) = 1;
  return v;
}

Int ipow(const Int& base, unsigned exponent) {
  Int result = 1;
  Int b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

int sign(const Int& x) { return x.sign(); }

std::strong_ordering lex_compare(const Vec& a, const Vec& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (b[i] < a[i]) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ",";
    out += v[i].str();
  }
  return out + ")";
}

std::vector<std::string> to_decimal_strings(const Vec& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Int& x : v) out.push_back(x.str());
  return out;
}

Vec from_decimal_strings(const std::vector<std::string>& s) {
  Vec out;
  out.reserve(s.size());
  for (const std::string& x : s) {
    if (x.empty()) throw std::invalid_argument("empty integer string");
    out.emplace_back(x);
  }
  return out;
}

}  // namespace strata
