#pragma once

#include "strata/index_set.hpp"
#include "strata/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace strata::prop {

// Deterministic generators for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Vec vec(int n, int bound) {
    Vec v(static_cast<std::size_t>(n));
    for (Int& x : v) x = uniform(-bound, bound);
    return v;
  }
  Matrix matrix(int rows, int n, int bound) {
    Matrix m;
    for (int i = 0; i < rows; ++i) m.push_back(vec(n, bound));
    return m;
  }
  IndexSet subset(int n) { return IndexSet::from_mask(n, rng_() % (std::uint64_t{1} << n)); }
  IndexSet nonempty_subset(int n) {
    for (;;) {
      IndexSet s = subset(n);
      if (!s.empty()) return s;
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Exact rational linear algebra, written independently of the library.
using QVec = std::vector<Rational>;

// Solves A y = b for A given by columns; nullopt when inconsistent. Free
// variables are set to zero.
inline std::optional<QVec> solve_columns(const Matrix& columns, const Vec& b) {
  const std::size_t m = b.size(), k = columns.size();
  std::vector<QVec> a(m, QVec(k + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = Rational(columns[c][r]);
    a[r][k] = Rational(b[r]);
  }
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < m; ++c) {
    std::size_t piv = row;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[row][c];
      for (std::size_t cc = c; cc <= k; ++cc) a[r][cc] -= f * a[row][cc];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  for (std::size_t r = row; r < m; ++r) {
    if (a[r][k] != 0) return std::nullopt;
  }
  QVec y(k, Rational(0));
  for (std::size_t r = 0; r < row; ++r) y[pivot_col[r]] = a[r][k] / a[r][pivot_col[r]];
  return y;
}

inline int rational_rank(const Matrix& rows, int n) {
  std::vector<QVec> a;
  for (const Vec& r : rows) a.push_back(QVec(r.begin(), r.end()));
  int rank = 0;
  for (int c = 0; c < n && rank < static_cast<int>(a.size()); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (int cc = c; cc < n; ++cc) a[r][cc] -= f * a[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Caratheodory oracle: x lies in cone(rays) + span(lines) iff for some
// linearly independent subset of rays, x minus a combination of them lies in
// span(lines) with nonnegative ray coefficients. Exponential, so small inputs only.
inline bool caratheodory_member(const Vec& x, const Matrix& rays, const Matrix& lines) {
  const std::size_t k = rays.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Matrix cols;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) cols.push_back(rays[i]);
    }
    const std::size_t used = cols.size();
    for (const Vec& l : lines) cols.push_back(l);
    const int n = static_cast<int>(x.size());
    if (rational_rank(cols, n) != static_cast<int>(cols.size())) continue;
    const auto y = solve_columns(cols, x);
    if (!y) continue;
    bool nonneg = true;
    for (std::size_t i = 0; i < used; ++i) nonneg = nonneg && (*y)[i] >= 0;
    if (nonneg) return true;
  }
  return false;
}

inline bool satisfies_all(const Vec& x, const Matrix& hrep) {
  return std::all_of(hrep.begin(), hrep.end(), [&](const Vec& f) { return dot(f, x) <= 0; });
}

}  // namespace strata::prop
