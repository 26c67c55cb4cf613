#include "strata/polycone.hpp"

#include "strata/lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>

namespace strata {
namespace {

struct DDRay {
  Vec v;
  boost::dynamic_bitset<> zero;
};

void check_rows(const Matrix& m, int n, const char* what) {
  for (const Vec& row : m) {
    if (row.size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument(std::string(what) + ": vector length differs from ambient rank");
    }
  }
}

// Primitive, nonzero, duplicate-free, lex sorted.
Matrix normalized_set(const Matrix& rows) {
  std::set<Vec, LexLess> seen;
  for (const Vec& r : rows) {
    if (is_zero(r)) continue;
    seen.insert(primitive(r));
  }
  return {seen.begin(), seen.end()};
}

Matrix project_all(const Matrix& rows, const Matrix& basis, int n) {
  const Matrix proj = orthogonal_projector(basis, n);
  Matrix out;
  out.reserve(rows.size());
  for (const Vec& r : rows) out.push_back(project_primitive(proj, r));
  return normalized_set(out);
}

Matrix concat(Matrix a, const Matrix& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void check_same_rank(const PolyCone& a, const PolyCone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("cones of different ambient rank");
}

}  // namespace

DoubleDescription double_description(int n, const Matrix& equalities, const Matrix& inequalities) {
  check_rows(equalities, n, "double_description");
  check_rows(inequalities, n, "double_description");
  const Matrix ineqs = normalized_set(inequalities);
  const std::size_t m = ineqs.size();

  Matrix lines;
  for (int i = 1; i <= n; ++i) lines.push_back(unit_vector(n, i));
  std::vector<DDRay> rays;

  auto process = [&](const Vec& a, std::optional<std::size_t> ineq_index) {
    std::size_t pivot = lines.size();
    Int a_pivot;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      a_pivot = dot(a, lines[i]);
      if (!a_pivot.is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < lines.size()) {
      const Vec l0 = lines[pivot];
      const int s0 = sign(a_pivot);
      const Int abs_pivot = abs(a_pivot);
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == pivot) continue;
        const Int al = dot(a, lines[i]);
        if (al.is_zero()) continue;
        Vec l(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < l.size(); ++k) l[k] = a_pivot * lines[i][k] - al * l0[k];
        lines[i] = primitive(std::move(l));
      }
      for (DDRay& r : rays) {
        const Int ar = dot(a, r.v);
        if (!ar.is_zero()) {
          Vec v(static_cast<std::size_t>(n));
          for (std::size_t k = 0; k < v.size(); ++k) v[k] = abs_pivot * r.v[k] - s0 * ar * l0[k];
          r.v = primitive(std::move(v));
        }
        if (ineq_index) r.zero.set(*ineq_index);
      }
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pivot));
      if (ineq_index) {
        DDRay fresh{s0 > 0 ? negated(l0) : l0, boost::dynamic_bitset<>(m)};
        for (std::size_t k = 0; k < *ineq_index; ++k) fresh.zero.set(k);
        rays.push_back(std::move(fresh));
      }
      return;
    }

    std::vector<Int> values;
    values.reserve(rays.size());
    for (const DDRay& r : rays) values.push_back(dot(a, r.v));
    std::vector<DDRay> next;
    std::vector<std::size_t> plus, minus;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const int s = sign(values[i]);
      if (s > 0) plus.push_back(i);
      if (s < 0) {
        minus.push_back(i);
        if (ineq_index) next.push_back(rays[i]);
      }
      if (s == 0) {
        DDRay r = rays[i];
        if (ineq_index) r.zero.set(*ineq_index);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t ip : plus) {
      for (std::size_t im : minus) {
        const boost::dynamic_bitset<> common = rays[ip].zero & rays[im].zero;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == ip || k == im) continue;
          if (common.is_subset_of(rays[k].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec v(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < v.size(); ++k) {
          v[k] = values[ip] * rays[im].v[k] - values[im] * rays[ip].v[k];
        }
        DDRay r{primitive(std::move(v)), common};
        if (ineq_index) r.zero.set(*ineq_index);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  };

  for (const Vec& e : equalities) {
    if (!is_zero(e)) process(e, std::nullopt);
  }
  for (std::size_t i = 0; i < m; ++i) process(ineqs[i], i);

  DoubleDescription out;
  out.lines = std::move(lines);
  for (DDRay& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

PolyCone PolyCone::finish_from_hrep(int n, Matrix facets, Matrix equalities) {
  PolyCone c;
  c.n_ = n;
  c.facets_ = std::move(facets);
  c.equalities_ = std::move(equalities);
  const DoubleDescription dd = double_description(n, c.equalities_, c.facets_);
  c.lineality_ = integer_kernel(concat(c.facets_, c.equalities_), n);
  c.rays_ = project_all(dd.rays, c.lineality_, n);
  return c;
}

PolyCone PolyCone::from_generators(int n, const Matrix& rays, const Matrix& lineality) {
  check_rows(rays, n, "from_generators");
  check_rows(lineality, n, "from_generators");
  // Polar description: forms f with f.g <= 0 on rays and f.l = 0 on lines.
  const DoubleDescription polar = double_description(n, lineality, rays);
  Matrix equalities = integer_kernel(concat(rays, lineality), n);
  Matrix facets = project_all(polar.rays, equalities, n);
  return finish_from_hrep(n, std::move(facets), std::move(equalities));
}

PolyCone PolyCone::from_hrep(int n, const Matrix& inequalities, const Matrix& equalities) {
  check_rows(inequalities, n, "from_hrep");
  check_rows(equalities, n, "from_hrep");
  const DoubleDescription dd = double_description(n, equalities, inequalities);
  const Matrix lineality = integer_kernel(concat(inequalities, equalities), n);
  const Matrix rays = project_all(dd.rays, lineality, n);
  return from_generators(n, rays, lineality);
}

PolyCone PolyCone::full_space(int n) { return from_hrep(n, {}); }

PolyCone PolyCone::zero(int n) { return from_generators(n, {}); }

Matrix PolyCone::hrep() const {
  Matrix out = facets_;
  for (const Vec& e : equalities_) {
    out.push_back(e);
    out.push_back(negated(e));
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

std::optional<Vec> PolyCone::violated_form(const Vec& x) const {
  if (x.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("weight length differs from ambient rank");
  for (const Vec& f : hrep()) {
    if (dot(f, x) > 0) return f;
  }
  return std::nullopt;
}

bool PolyCone::contains(const Vec& x) const {
  if (x.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("weight length differs from ambient rank");
  for (const Vec& e : equalities_) {
    if (!dot(e, x).is_zero()) return false;
  }
  for (const Vec& f : facets_) {
    if (dot(f, x) > 0) return false;
  }
  return true;
}

PolyCone dd_convert(const PolyCone& cone, ConvertDirection direction) {
  if (direction == ConvertDirection::h_to_v) {
    return PolyCone::from_hrep(cone.ambient_dim(), cone.facets(), cone.equalities());
  }
  return PolyCone::from_generators(cone.ambient_dim(), cone.rays(), cone.lineality());
}

PolyCone intersect(const PolyCone& a, const PolyCone& b) {
  check_same_rank(a, b);
  return PolyCone::from_hrep(a.ambient_dim(), concat(a.facets(), b.facets()),
                             concat(a.equalities(), b.equalities()));
}

PolyCone intersect_all(int n, const std::vector<PolyCone>& cones) {
  Matrix ineqs, eqs;
  for (const PolyCone& c : cones) {
    if (c.ambient_dim() != n) throw std::invalid_argument("cones of different ambient rank");
    ineqs = concat(std::move(ineqs), c.facets());
    eqs = concat(std::move(eqs), c.equalities());
  }
  return PolyCone::from_hrep(n, ineqs, eqs);
}

PolyCone sum_saturated(const PolyCone& a, const PolyCone& b) {
  check_same_rank(a, b);
  return PolyCone::from_generators(a.ambient_dim(), concat(a.rays(), b.rays()),
                                   concat(a.lineality(), b.lineality()));
}

SubconeResult is_subcone(const PolyCone& a, const PolyCone& b) {
  check_same_rank(a, b);
  const Matrix forms = b.hrep();
  auto check = [&](const Vec& g, const char* role) -> std::optional<Certificate> {
    for (const Vec& f : forms) {
      if (dot(f, g) > 0) return Certificate{g, f, role};
    }
    return std::nullopt;
  };
  for (const Vec& r : a.rays()) {
    if (auto c = check(r, "ray")) return {false, c};
  }
  for (const Vec& l : a.lineality()) {
    if (auto c = check(l, "lineality")) return {false, c};
    if (auto c = check(negated(l), "-lineality")) return {false, c};
  }
  return {};
}

bool equals(const PolyCone& a, const PolyCone& b) {
  return is_subcone(a, b).holds && is_subcone(b, a).holds;
}

GeneratorOutsideCone::GeneratorOutsideCone(Vec generator, Vec form)
    : std::invalid_argument("generator " + to_string(generator) + " violates " + to_string(form)),
      generator_(std::move(generator)),
      form_(std::move(form)) {}

bool generates_modulo_kernel(const PolyCone& cone, const Matrix& gens) {
  for (const Vec& g : gens) {
    if (auto f = cone.violated_form(g)) throw GeneratorOutsideCone(g, *f);
  }
  const PolyCone hull = PolyCone::from_generators(cone.ambient_dim(), gens, cone.lineality());
  return is_subcone(cone, hull).holds;
}

Vec sigma_shift(const Vec& v, int t) {
  const int n = static_cast<int>(v.size());
  Vec out(v.size());
  for (int i = 0; i < n; ++i) {
    int j = (i + t) % n;
    if (j < 0) j += n;
    out[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i)];
  }
  return out;
}

PolyCone sigma_shift(const PolyCone& cone, int t) {
  Matrix facets, eqs;
  for (const Vec& f : cone.facets()) facets.push_back(sigma_shift(f, t));
  for (const Vec& e : cone.equalities()) eqs.push_back(sigma_shift(e, t));
  return PolyCone::from_hrep(cone.ambient_dim(), facets, eqs);
}

PolyCone product_cone(const std::vector<PolyCone>& factors) {
  int n = 0;
  for (const PolyCone& f : factors) n += f.ambient_dim();
  Matrix ineqs, eqs;
  int offset = 0;
  auto embed = [&](const Vec& v) {
    Vec out(static_cast<std::size_t>(n), Int(0));
    std::copy(v.begin(), v.end(), out.begin() + offset);
    return out;
  };
  for (const PolyCone& f : factors) {
    for (const Vec& v : f.facets()) ineqs.push_back(embed(v));
    for (const Vec& v : f.equalities()) eqs.push_back(embed(v));
    offset += f.ambient_dim();
  }
  return PolyCone::from_hrep(n, ineqs, eqs);
}

}  // namespace strata
