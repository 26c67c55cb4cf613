#pragma once

#include "strata/cyclic.hpp"
#include "strata/index_set.hpp"
#include "strata/integer.hpp"
#include "strata/poly.hpp"
#include "strata/polycone.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

/// (n, R, S, p), optionally split into consecutive coordinate blocks on each
/// of which the Frobenius translation acts cyclically. No blocks means one
/// block of size n.
struct StratumContext {
  StratumContext(int n, IndexSet R, IndexSet S, Int p, std::vector<int> blocks = {});

  int n;
  IndexSet R;
  IndexSet S;
  Int p;
  std::vector<int> blocks;

  bool composite() const { return blocks.size() > 1; }
  /// Cyclic predecessor of i inside its block.
  int predecessor(int i) const;
  StratumContext with_stratum(IndexSet stratum) const;
  /// "n=8 R={1,3} S={4,6} p=2"
  std::string label() const;
};

/// Translates R and S by t; single block only.
StratumContext sigma_shift(const StratumContext& ctx, int t);

/// F^{(d)}_T(x) = sum_{i=0}^{n-1} p^i delta_T^{(d+i)} x_{d+i}.
struct PExpression {
  int n;
  int d;
  IndexSet T;

  Vec coefficients(const Int& p) const;
  std::vector<Poly> symbolic_coefficients() const;
  Int evaluate(const Vec& x, const Int& p) const;
  /// Index carrying p^{n-1}, namely d - 1.
  int leading_index() const { return reduce(d - 1, n); }

  friend bool operator==(const PExpression&, const PExpression&) = default;
};

PExpression p_expression(int d, const IndexSet& T);

/// Reads a primitive form as F^{(d)}_T at the given p, if it is one.
std::optional<PExpression> parse_p_expression(const Vec& form, int n, const Int& p);

/// A finite conjunction F(x) <= 0 of p-expressions attached to a context.
struct PCone {
  StratumContext ctx;
  std::vector<PExpression> expressions;

  Matrix forms() const;
  PolyCone realize() const;
};

/// -delta_S^{(i)} e_i - p delta_R^{(i-1)} e_{i-1}, the image of e_i under h_w.
Weight ha_weight(int i, const StratumContext& ctx);
/// delta_T^{(i)} e_i - p delta_R^{(i-1)} e_{i-1} with T = phi(R, S); i must lie in S.
Weight gen_weight(int i, const StratumContext& ctx);

/// Matrix whose i-th column is ha_weight(i).
Matrix hw_matrix(const StratumContext& ctx);

/// The cyclic bidiagonal matrix with a_i on the diagonal, -b_i at (i, i+1)
/// and -b_n at (n, 1).
Matrix cyclic_bidiagonal(const Vec& a, const Vec& b);
/// Its adjugate from the closed product formula J_{j+1,i-1}(a) J_{i,j-1}(b).
Matrix adjugate_j_formula(const Vec& a, const Vec& b);
/// J_{i,j}(x): product of x_i, ..., x_j along the cycle, 1 when i = j + 1 mod n.
Int j_product(const Vec& x, int i, int j);

/// Saturated hull of N ha^{(i)} (i in S) plus Z ha^{(i)} (i not in S).
PolyCone cone_pha_generators(const StratumContext& ctx);
/// The same cone read off the adjugate of the h_w matrix; single block only.
/// Throws std::logic_error if the product formula disagrees with cofactors or
/// a row is not a p-expression.
PCone cone_pha_adjugate(const StratumContext& ctx);

class PhaConstructionMismatch : public std::runtime_error {
 public:
  PhaConstructionMismatch(const StratumContext& ctx, Matrix generator_hrep, Matrix adjugate_hrep);
  const Matrix& generator_hrep() const { return generator_hrep_; }
  const Matrix& adjugate_hrep() const { return adjugate_hrep_; }

 private:
  Matrix generator_hrep_;
  Matrix adjugate_hrep_;
};

/// Generator form, after asserting it equals the adjugate form (single block).
PolyCone cone_pha(const StratumContext& ctx);

/// Saturated span of ha^{(i)} for i not in S.
Matrix kernel_KS(const StratumContext& ctx);

/// Homogeneous S-adapted cone with sign set phi(R, S); single block only.
PCone cone_crs(const StratumContext& ctx);
/// cone_crs realized; composite contexts give the product of the factor cones.
PolyCone cone_crs_polycone(const StratumContext& ctx);

struct PConeFlags {
  bool s_adapted = false;
  bool homogeneous = false;
  bool admissible = false;
  bool positive = false;
  bool hasse_admissible = false;
  friend bool operator==(const PConeFlags&, const PConeFlags&) = default;
};

PConeFlags classify_pcone(const PCone& c);

/// delta_T^{(d-1)} x_{d-1} <= 0 for each expression.
PolyCone limit_cone(const PCone& c);

/// x_i >= 0 on R and x_i <= 0 off R.
PolyCone cone_gs(int n, const IndexSet& R);
/// x_i > 0 on R and x_i < 0 off R.
bool gs_strict_member(const Vec& x, const IndexSet& R);

/// x_i >= 0 for i in R.
PolyCone cone_dominant(int n, const IndexSet& R);

class NoNonCompactIndex : public std::invalid_argument {
 public:
  NoNonCompactIndex() : std::invalid_argument("no non-compact index") {}
};

/// e_r + p^k e_{r-k} (1 <= k < g) and e_r - p^g e_{r'} for consecutive
/// r' < r in the complement of R with gap g. Exactly n weights.
std::vector<Weight> lambda_generators(int n, const IndexSet& R, const Int& p);

/// y_i = x_i on R, y_i = -F^{(i+1)}_R(x) / (p (p^n - 1)) off R.
std::vector<Rational> minv_coords(const Vec& x, const IndexSet& R, const Int& p);

/// F^{(j)}_R(x) <= 0 for all j, intersected with the dominant cone (just the
/// dominant cone when R = E_n).
PolyCone cone_lw(int n, const IndexSet& R, const Int& p);

/// Splits a composite context into its factors with block-local indices.
/// Throws std::invalid_argument naming the block when a factor stratum is empty.
std::vector<StratumContext> product_decompose(const std::vector<int>& blocks, const IndexSet& R,
                                              const IndexSet& S, const Int& p);

/// "32*x1 + 64*x2 - x4 <= 0"
std::string format_inequality(const Vec& coefficients);
/// "p^5*x1 - p^7*x3 - x4 <= 0"
std::string format_inequality(const std::vector<Poly>& coefficients);

}  // namespace strata
