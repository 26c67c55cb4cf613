#include "strata/pcone.hpp"

#include "strata/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace strata {
namespace {

std::vector<StratumContext> split_blocks(const StratumContext& ctx) {
  std::vector<StratumContext> out;
  int offset = 0;
  for (int m : ctx.blocks) {
    std::vector<int> r, s;
    for (int i = 1; i <= m; ++i) {
      if (ctx.R.contains(offset + i)) r.push_back(i);
      if (ctx.S.contains(offset + i)) s.push_back(i);
    }
    out.emplace_back(m, IndexSet(m, r), IndexSet(m, s), ctx.p);
    offset += m;
  }
  return out;
}

void require_single_block(const StratumContext& ctx, const char* what) {
  if (ctx.composite()) throw std::invalid_argument(std::string(what) + ": composite context");
}

std::string term(const std::string& magnitude, int index) {
  const std::string var = "x" + std::to_string(index);
  return magnitude == "1" ? var : magnitude + "*" + var;
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
  if (terms.empty()) return "0 <= 0";
  std::string out;
  for (const auto& [negative, body] : terms) {
    if (out.empty()) {
      out += negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out + " <= 0";
}

}  // namespace

StratumContext::StratumContext(int n_, IndexSet R_, IndexSet S_, Int p_, std::vector<int> blocks_)
    : n(n_), R(R_), S(S_), p(std::move(p_)), blocks(std::move(blocks_)) {
  if (n < 1) throw std::invalid_argument("context: n must be positive");
  if (R.modulus() != n || S.modulus() != n) throw std::invalid_argument("context: sets must live in E_n");
  if (p < 2) throw std::invalid_argument("context: p must be at least 2");
  if (blocks.empty()) blocks = {n};
  int total = 0;
  for (int m : blocks) {
    if (m < 1) throw std::invalid_argument("context: blocks must be positive");
    total += m;
  }
  if (total != n) throw std::invalid_argument("context: block sizes must sum to n");
}

int StratumContext::predecessor(int i) const {
  i = reduce(i, n);
  int offset = 0;
  for (int m : blocks) {
    if (i <= offset + m) return offset + reduce(i - offset - 1, m);
    offset += m;
  }
  throw std::logic_error("predecessor: unreachable");
}

StratumContext StratumContext::with_stratum(IndexSet stratum) const {
  return StratumContext(n, R, stratum, p, blocks);
}

std::string StratumContext::label() const {
  std::string out = "n=" + std::to_string(n) + " R=" + R.to_braced() + " S=" + S.to_braced() +
                    " p=" + p.str();
  if (composite()) {
    out += " blocks=";
    for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "+" : "") + std::to_string(blocks[i]);
  }
  return out;
}

StratumContext sigma_shift(const StratumContext& ctx, int t) {
  require_single_block(ctx, "sigma_shift");
  return StratumContext(ctx.n, ctx.R.shifted(t), ctx.S.shifted(t), ctx.p);
}

Vec PExpression::coefficients(const Int& p) const {
  Vec out(static_cast<std::size_t>(n), Int(0));
  Int power = 1;
  for (int i = 0; i < n; ++i) {
    const int j = reduce(d + i, n);
    out[static_cast<std::size_t>(j - 1)] = T.delta(j) * power;
    power *= p;
  }
  return out;
}

std::vector<Poly> PExpression::symbolic_coefficients() const {
  std::vector<Poly> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int j = reduce(d + i, n);
    out[static_cast<std::size_t>(j - 1)] = Poly::p_power(static_cast<unsigned>(i), T.delta(j));
  }
  return out;
}

Int PExpression::evaluate(const Vec& x, const Int& p) const { return dot(coefficients(p), x); }

std::optional<PExpression> parse_p_expression(const Vec& f, int n, const Int& p) {
  int d = 0;
  for (int j = 1; j <= n; ++j) {
    if (abs(f[static_cast<std::size_t>(j - 1)]) == 1) {
      d = j;
      break;
    }
  }
  if (d == 0) return std::nullopt;
  IndexSet T(n);
  Int power = 1;
  for (int i = 0; i < n; ++i) {
    const int j = reduce(d + i, n);
    const Int& c = f[static_cast<std::size_t>(j - 1)];
    if (abs(c) != power) return std::nullopt;
    if (c < 0) T = T.with(j);
    power *= p;
  }
  return PExpression{n, d, T};
}

PExpression p_expression(int d, const IndexSet& T) {
  const int n = T.modulus();
  if (d < 1 || d > n) throw std::invalid_argument("p_expression: starting index outside E_n");
  return PExpression{n, d, T};
}

Matrix PCone::forms() const {
  Matrix out;
  for (const PExpression& e : expressions) out.push_back(e.coefficients(ctx.p));
  return out;
}

PolyCone PCone::realize() const { return PolyCone::from_hrep(ctx.n, forms()); }

Weight ha_weight(int i, const StratumContext& ctx) {
  Weight w(static_cast<std::size_t>(ctx.n), Int(0));
  i = reduce(i, ctx.n);
  const int prev = ctx.predecessor(i);
  w[static_cast<std::size_t>(i - 1)] += -ctx.S.delta(i);
  w[static_cast<std::size_t>(prev - 1)] -= ctx.p * ctx.R.delta(prev);
  return w;
}

Weight gen_weight(int i, const StratumContext& ctx) {
  require_single_block(ctx, "gen_weight");
  if (!ctx.S.contains(i) || i < 1 || i > ctx.n) {
    throw std::invalid_argument("gen_weight: " + std::to_string(i) + " is not in " + ctx.S.to_braced());
  }
  const IndexSet T = phi(ctx.R, ctx.S);
  Weight w(static_cast<std::size_t>(ctx.n), Int(0));
  const int prev = ctx.predecessor(i);
  w[static_cast<std::size_t>(i - 1)] += T.delta(i);
  w[static_cast<std::size_t>(prev - 1)] -= ctx.p * ctx.R.delta(prev);
  return w;
}

Matrix hw_matrix(const StratumContext& ctx) {
  const auto n = static_cast<std::size_t>(ctx.n);
  Matrix m(n, Vec(n, Int(0)));
  for (int i = 1; i <= ctx.n; ++i) {
    const Weight w = ha_weight(i, ctx);
    for (std::size_t r = 0; r < n; ++r) m[r][static_cast<std::size_t>(i - 1)] = w[r];
  }
  return m;
}

Matrix cyclic_bidiagonal(const Vec& a, const Vec& b) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) throw std::invalid_argument("cyclic_bidiagonal: bad lengths");
  Matrix m(n, Vec(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] += a[i];
    m[i][(i + 1) % n] -= b[i];
  }
  return m;
}

Int j_product(const Vec& x, int i, int j) {
  const int n = static_cast<int>(x.size());
  if (reduce(i, n) == reduce(j + 1, n)) return 1;
  const int span = reduce(j - i + 1, n);  // number of factors, in 1..n-1
  Int acc = 1;
  for (int k = 0; k < span; ++k) acc *= x[static_cast<std::size_t>(reduce(i + k, n) - 1)];
  return acc;
}

Matrix adjugate_j_formula(const Vec& a, const Vec& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n || n == 0) throw std::invalid_argument("adjugate_j_formula: bad lengths");
  Matrix adj(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), Int(0)));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      adj[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          j_product(a, j + 1, i - 1) * j_product(b, i, j - 1);
    }
  }
  return adj;
}

PolyCone cone_pha_generators(const StratumContext& ctx) {
  Matrix rays, lines;
  for (int i = 1; i <= ctx.n; ++i) (ctx.S.contains(i) ? rays : lines).push_back(ha_weight(i, ctx));
  return PolyCone::from_generators(ctx.n, rays, lines);
}

PCone cone_pha_adjugate(const StratumContext& ctx) {
  require_single_block(ctx, "cone_pha_adjugate");
  const int n = ctx.n;
  Vec a, b;
  for (int i = 1; i <= n; ++i) {
    a.emplace_back(-ctx.S.delta(i));
    b.push_back(ctx.p * ctx.R.delta(i));
  }
  const Matrix m = cyclic_bidiagonal(a, b);
  if (m != hw_matrix(ctx)) throw std::logic_error("h_w matrix is not M(-delta_S, p delta_R)");
  const Matrix adj = adjugate_j_formula(a, b);
  if (adj != adjugate(m)) throw std::logic_error("product formula adjugate disagrees with cofactors");
  const int det_sign = sign(determinant(m));
  PCone out{ctx, {}};
  for (int i : ctx.S.members()) {
    Vec form = adj[static_cast<std::size_t>(i - 1)];
    if (det_sign > 0) form = negated(std::move(form));
    if (dot(form, ha_weight(i, ctx)) > 0) form = negated(std::move(form));
    auto expr = parse_p_expression(primitive(form), n, ctx.p);
    if (!expr || expr->d != i) {
      throw std::logic_error("adjugate row " + std::to_string(i) + " is not a p-expression: " + to_string(form));
    }
    out.expressions.push_back(*expr);
  }
  return out;
}

PhaConstructionMismatch::PhaConstructionMismatch(const StratumContext& ctx, Matrix generator_hrep,
                                                 Matrix adjugate_hrep)
    : std::runtime_error("partial Hasse cone constructions differ at " + ctx.label()),
      generator_hrep_(std::move(generator_hrep)),
      adjugate_hrep_(std::move(adjugate_hrep)) {}

PolyCone cone_pha(const StratumContext& ctx) {
  PolyCone generated = cone_pha_generators(ctx);
  PolyCone adjugate_form = [&] {
    if (!ctx.composite()) return cone_pha_adjugate(ctx).realize();
    std::vector<PolyCone> factors;
    for (const StratumContext& f : split_blocks(ctx)) factors.push_back(cone_pha_adjugate(f).realize());
    return product_cone(factors);
  }();
  if (!equals(generated, adjugate_form)) {
    throw PhaConstructionMismatch(ctx, generated.hrep(), adjugate_form.hrep());
  }
  return generated;
}

Matrix kernel_KS(const StratumContext& ctx) {
  Matrix gens;
  for (int i = 1; i <= ctx.n; ++i) {
    if (!ctx.S.contains(i)) gens.push_back(ha_weight(i, ctx));
  }
  return saturate(gens, ctx.n);
}

PCone cone_crs(const StratumContext& ctx) {
  require_single_block(ctx, "cone_crs");
  const IndexSet T = phi(ctx.R, ctx.S);
  PCone out{ctx, {}};
  for (int i : ctx.S.members()) out.expressions.push_back(PExpression{ctx.n, i, T});
  return out;
}

PolyCone cone_crs_polycone(const StratumContext& ctx) {
  if (!ctx.composite()) return cone_crs(ctx).realize();
  std::vector<PolyCone> factors;
  for (const StratumContext& f : product_decompose(ctx.blocks, ctx.R, ctx.S, ctx.p)) {
    factors.push_back(cone_crs(f).realize());
  }
  return product_cone(factors);
}

PConeFlags classify_pcone(const PCone& c) {
  const StratumContext& ctx = c.ctx;
  PConeFlags flags;
  std::vector<int> starts;
  for (const PExpression& e : c.expressions) starts.push_back(e.d);
  std::sort(starts.begin(), starts.end());
  flags.s_adapted = (starts == ctx.S.members());
  flags.homogeneous = std::all_of(c.expressions.begin(), c.expressions.end(),
                                  [&](const PExpression& e) { return e.T == c.expressions.front().T; });
  if (ctx.S.empty()) {
    flags.admissible = flags.positive = flags.hasse_admissible = c.expressions.empty();
    return flags;
  }
  const ChainDiagram diagram(ctx.R, ctx.S);
  flags.admissible = std::all_of(c.expressions.begin(), c.expressions.end(),
                                 [&](const PExpression& e) { return is_admissible_subset(e.T, diagram); });
  flags.positive = flags.s_adapted &&
                   std::all_of(c.expressions.begin(), c.expressions.end(),
                               [&](const PExpression& e) { return is_positive_at(e.T, e.d, ctx.R); });
  flags.hasse_admissible = flags.admissible;
  for (const PExpression& e : c.expressions) {
    for (int j : ctx.S.members()) {
      if (!e.T.contains(j) && !is_positive_at(e.T, j, ctx.R)) flags.hasse_admissible = false;
    }
  }
  return flags;
}

PolyCone limit_cone(const PCone& c) {
  Matrix forms;
  for (const PExpression& e : c.expressions) {
    const int k = e.leading_index();
    Vec f(static_cast<std::size_t>(c.ctx.n), Int(0));
    f[static_cast<std::size_t>(k - 1)] = e.T.delta(k);
    forms.push_back(std::move(f));
  }
  return PolyCone::from_hrep(c.ctx.n, forms);
}

PolyCone cone_gs(int n, const IndexSet& R) {
  Matrix forms;
  for (int i = 1; i <= n; ++i) forms.push_back(R.contains(i) ? negated(unit_vector(n, i)) : unit_vector(n, i));
  return PolyCone::from_hrep(n, forms);
}

bool gs_strict_member(const Vec& x, const IndexSet& R) {
  for (int i = 1; i <= R.modulus(); ++i) {
    const Int& v = x.at(static_cast<std::size_t>(i - 1));
    if (R.contains(i) ? v <= 0 : v >= 0) return false;
  }
  return true;
}

PolyCone cone_dominant(int n, const IndexSet& R) {
  Matrix forms;
  for (int i : R.members()) forms.push_back(negated(unit_vector(n, i)));
  return PolyCone::from_hrep(n, forms);
}

std::vector<Weight> lambda_generators(int n, const IndexSet& R, const Int& p) {
  const std::vector<int> noncompact = R.complement().members();
  if (noncompact.empty()) throw NoNonCompactIndex();
  std::vector<Weight> out;
  for (std::size_t idx = 0; idx < noncompact.size(); ++idx) {
    const int r = noncompact[idx];
    const int prev = noncompact[(idx + noncompact.size() - 1) % noncompact.size()];
    const int gap = reduce(r - prev, n);
    for (int k = 1; k < gap; ++k) {
      Weight w = unit_vector(n, r);
      w[static_cast<std::size_t>(reduce(r - k, n) - 1)] += ipow(p, static_cast<unsigned>(k));
      out.push_back(std::move(w));
    }
    Weight w = unit_vector(n, r);
    w[static_cast<std::size_t>(prev - 1)] -= ipow(p, static_cast<unsigned>(gap));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Rational> minv_coords(const Vec& x, const IndexSet& R, const Int& p) {
  const int n = R.modulus();
  if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("minv_coords: length mismatch");
  const Int denom = p * (ipow(p, static_cast<unsigned>(n)) - 1);
  std::vector<Rational> y;
  for (int i = 1; i <= n; ++i) {
    if (R.contains(i)) {
      y.emplace_back(x[static_cast<std::size_t>(i - 1)]);
    } else {
      const Int f = PExpression{n, reduce(i + 1, n), R}.evaluate(x, p);
      y.emplace_back(Rational(-f, denom));
    }
  }
  return y;
}

PolyCone cone_lw(int n, const IndexSet& R, const Int& p) {
  const PolyCone dominant = cone_dominant(n, R);
  if (R.size() == n) return dominant;
  Matrix forms = dominant.facets();
  for (int j = 1; j <= n; ++j) forms.push_back(PExpression{n, j, R}.coefficients(p));
  return PolyCone::from_hrep(n, forms);
}

std::vector<StratumContext> product_decompose(const std::vector<int>& blocks, const IndexSet& R,
                                              const IndexSet& S, const Int& p) {
  const int n = std::accumulate(blocks.begin(), blocks.end(), 0);
  const StratumContext whole(n, R, S, p, blocks);
  std::vector<StratumContext> factors = split_blocks(whole);
  int offset = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].S.empty()) {
      throw std::invalid_argument("empty stratum in block " + std::to_string(k + 1) + " (coordinates " +
                                  std::to_string(offset + 1) + ".." +
                                  std::to_string(offset + factors[k].n) + ")");
    }
    offset += factors[k].n;
  }
  return factors;
}

std::string format_inequality(const Vec& coefficients) {
  std::vector<std::pair<bool, std::string>> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const Int& c = coefficients[i];
    if (c.is_zero()) continue;
    terms.emplace_back(c < 0, term(Int(abs(c)).str(), static_cast<int>(i + 1)));
  }
  return join_terms(terms);
}

std::string format_inequality(const std::vector<Poly>& coefficients) {
  std::vector<std::pair<bool, std::string>> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const Poly& c = coefficients[i];
    if (c.is_zero()) continue;
    const auto nonzero = std::count_if(c.coefficients().begin(), c.coefficients().end(),
                                       [](const Int& v) { return !v.is_zero(); });
    if (nonzero == 1) {
      const bool negative = c.coefficients().back() < 0;
      terms.emplace_back(negative, term((negative ? -c : c).to_string(), static_cast<int>(i + 1)));
    } else {
      terms.emplace_back(false, "(" + c.to_string() + ")*x" + std::to_string(i + 1));
    }
  }
  return join_terms(terms);
}

}  // namespace strata
