#include "strata/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace strata {
namespace {

// Returns g = gcd(a, b) >= 0 with x a + y b = g.
Int extended_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (!r.is_zero()) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// Floor division for a possibly negative numerator and positive divisor.
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && a < 0) q -= 1;
  return q;
}

// In-place row echelon form on the first `cols` columns using unimodular
// row operations. Returns the number of pivot rows (they come first).
std::size_t echelonize(Matrix& m, std::size_t cols, bool reduce_above) {
  std::size_t pivot_row = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t c = 0; c < cols && pivot_row < m.size(); ++c) {
    for (std::size_t i = pivot_row + 1; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      if (m[pivot_row][c].is_zero()) {
        std::swap(m[pivot_row], m[i]);
        continue;
      }
      Int x, y;
      const Int a = m[pivot_row][c];
      const Int b = m[i][c];
      const Int g = extended_gcd(a, b, x, y);
      const Int ua = a / g;
      const Int ub = b / g;
      Vec top(m[i].size()), bottom(m[i].size());
      for (std::size_t k = 0; k < m[i].size(); ++k) {
        top[k] = x * m[pivot_row][k] + y * m[i][k];
        bottom[k] = ub * m[pivot_row][k] - ua * m[i][k];
      }
      m[pivot_row] = std::move(top);
      m[i] = std::move(bottom);
    }
    if (m[pivot_row][c].is_zero()) continue;
    if (m[pivot_row][c] < 0) m[pivot_row] = negated(m[pivot_row]);
    pivots.emplace_back(pivot_row, c);
    ++pivot_row;
  }
  if (reduce_above) {
    for (const auto& [r, c] : pivots) {
      const Int& piv = m[r][c];
      for (std::size_t i = 0; i < r; ++i) {
        const Int q = floor_div(m[i][c], piv);
        if (q.is_zero()) continue;
        for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] -= q * m[r][k];
      }
    }
  }
  return pivot_row;
}

void check_width(const Matrix& m, int n) {
  for (const Vec& row : m) {
    if (row.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("matrix width mismatch");
  }
}

}  // namespace

Matrix hnf_basis(Matrix gens, int n) {
  check_width(gens, n);
  const std::size_t r = echelonize(gens, static_cast<std::size_t>(n), true);
  gens.resize(r);
  return gens;
}

Matrix integer_kernel(const Matrix& rows, int n) {
  check_width(rows, n);
  const std::size_t m = rows.size();
  // Row j of the work matrix is (column j of `rows` | e_j).
  Matrix work(static_cast<std::size_t>(n), Vec(m + static_cast<std::size_t>(n), Int(0)));
  for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
    for (std::size_t i = 0; i < m; ++i) work[j][i] = rows[i][j];
    work[j][m + j] = 1;
  }
  const std::size_t r = echelonize(work, m, false);
  Matrix kernel;
  for (std::size_t j = r; j < work.size(); ++j) {
    kernel.emplace_back(work[j].begin() + static_cast<std::ptrdiff_t>(m), work[j].end());
  }
  return hnf_basis(std::move(kernel), n);
}

Matrix saturate(const Matrix& gens, int n) { return integer_kernel(integer_kernel(gens, n), n); }

Int determinant(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Matrix a = m;
  Int prev = 1;
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sgn * a[n - 1][n - 1];
}

int rank(const Matrix& m, int n) {
  check_width(m, n);
  Matrix a = m;
  return static_cast<int>(echelonize(a, static_cast<std::size_t>(n), false));
}

Matrix adjugate(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  Matrix adj(n, Vec(n, Int(0)));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // adj[i][j] = (-1)^(i+j) det(m without row j and column i)
      Matrix minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        Vec row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c) {
          if (c != i) row.push_back(m[r][c]);
        }
        minor.push_back(std::move(row));
      }
      Int d = determinant(minor);
      adj[i][j] = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  }
  return adj;
}

Matrix transpose(const Matrix& m, int n) {
  Matrix t(static_cast<std::size_t>(n), Vec(m.size(), Int(0)));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) t[j][i] = m[i][j];
  }
  return t;
}

Vec mat_vec(const Matrix& m, const Vec& x) {
  Vec out;
  out.reserve(m.size());
  for (const Vec& row : m) out.push_back(dot(row, x));
  return out;
}

Matrix orthogonal_projector(const Matrix& basis, int n) {
  const auto nn = static_cast<std::size_t>(n);
  Matrix p(nn, Vec(nn, Int(0)));
  if (basis.empty()) {
    for (std::size_t i = 0; i < nn; ++i) p[i][i] = 1;
    return p;
  }
  const std::size_t k = basis.size();
  Matrix gram(k, Vec(k, Int(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
  }
  const Int det = determinant(gram);
  if (det <= 0) throw std::invalid_argument("orthogonal_projector: dependent basis");
  const Matrix adj = adjugate(gram);
  // P = det I - B^T adj(G) B
  Matrix adj_b(k, Vec(nn, Int(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < nn; ++c) {
      Int acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += adj[i][j] * basis[j][c];
      adj_b[i][c] = acc;
    }
  }
  for (std::size_t r = 0; r < nn; ++r) {
    for (std::size_t c = 0; c < nn; ++c) {
      Int acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += basis[i][r] * adj_b[i][c];
      p[r][c] = (r == c ? det : Int(0)) - acc;
    }
  }
  return p;
}

Vec project_primitive(const Matrix& projector, const Vec& v) { return primitive(mat_vec(projector, v)); }

bool lattice_contains(const Matrix& basis, const Vec& v, int n) {
  Matrix with = basis;
  with.push_back(v);
  return hnf_basis(std::move(with), n) == hnf_basis(basis, n);
}

}  // namespace strata
