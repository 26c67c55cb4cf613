#include "support.hpp"

#include "strata/lattice.hpp"
#include "strata/pcone.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace strata;

namespace {

StratumContext ctx_of(int n, std::initializer_list<int> r, std::initializer_list<int> s, int p) {
  return StratumContext(n, IndexSet(n, r), IndexSet(n, s), Int(p));
}

std::string symbolic(const PExpression& e) { return format_inequality(e.symbolic_coefficients()); }

}  // namespace

TEST(PExpression, EightCycleCoefficients) {
  const PExpression e{8, 4, IndexSet(8, {3, 4, 6, 8})};
  EXPECT_EQ(symbolic(e), "p^5*x1 + p^6*x2 - p^7*x3 - x4 + p*x5 - p^2*x6 + p^3*x7 - p^4*x8 <= 0");
  EXPECT_EQ(e.leading_index(), 3);
  EXPECT_EQ((PExpression{3, 1, IndexSet(3)}.coefficients(2)), (Vec{1, 2, 4}));
}

TEST(PExpression, ParseInvertsCoefficients) {
  prop::Gen gen(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.uniform(1, 7);
    const PExpression e{n, gen.uniform(1, n), gen.subset(n)};
    const Int p = gen.uniform(2, 7);
    const auto back = parse_p_expression(e.coefficients(p), n, p);
    ASSERT_TRUE(back.has_value());
    // For n = 1 every d is the same index.
    EXPECT_EQ(back->T, e.T);
    EXPECT_EQ(reduce(back->d, n), reduce(e.d, n));
  }
  EXPECT_FALSE(parse_p_expression({1, 3, 2}, 3, 2).has_value());
}

TEST(Pcone, CrsEightCycleExample) {
  const PCone c = cone_crs(ctx_of(8, {1, 3}, {4, 6}, 2));
  ASSERT_EQ(c.expressions.size(), 2u);
  EXPECT_EQ(symbolic(c.expressions[0]), "p^5*x1 + p^6*x2 - p^7*x3 - x4 + p*x5 - p^2*x6 + p^3*x7 - p^4*x8 <= 0");
  EXPECT_EQ(symbolic(c.expressions[1]), "p^3*x1 + p^4*x2 - p^5*x3 - p^6*x4 + p^7*x5 - x6 + p*x7 - p^2*x8 <= 0");
  EXPECT_EQ(format_inequality(c.expressions[0].coefficients(2)),
            "32*x1 + 64*x2 - 128*x3 - x4 + 2*x5 - 4*x6 + 8*x7 - 16*x8 <= 0");
}

TEST(Pcone, CrsOfFullStratumUsesR) {
  const PCone c = cone_crs(ctx_of(3, {2}, {1, 2, 3}, 5));
  ASSERT_EQ(c.expressions.size(), 3u);
  for (const PExpression& e : c.expressions) EXPECT_EQ(e.T, IndexSet(3, {2}));
}

TEST(Pcone, HaWeights) {
  const StratumContext c = ctx_of(2, {}, {1, 2}, 3);
  EXPECT_EQ(ha_weight(1, c), (Weight{1, -3}));
  EXPECT_EQ(ha_weight(2, c), (Weight{-3, 1}));
  const StratumContext d = ctx_of(3, {}, {1}, 2);
  EXPECT_EQ(ha_weight(2, d), (Weight{-2, -1, 0}));
}

TEST(Pcone, PhaRankTwoExample) {
  const StratumContext c = ctx_of(2, {}, {1, 2}, 3);
  const PolyCone gen_form = cone_pha_generators(c);
  EXPECT_EQ(gen_form.hrep(), (Matrix{{1, 3}, {3, 1}}));
  EXPECT_EQ(cone_pha(c), gen_form);
  EXPECT_EQ(cone_pha_adjugate(c).realize(), gen_form);
}

TEST(Pcone, PhaSingletonStratum) {
  const StratumContext c = ctx_of(4, {2}, {3}, 2);
  EXPECT_EQ(cone_pha_adjugate(c).expressions.size(), 1u);
  EXPECT_EQ(cone_pha(c).lineality_rank(), 3);
}

TEST(Pcone, HwDeterminant) {
  prop::Gen gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.uniform(1, 7);
    const StratumContext c(n, gen.subset(n), gen.nonempty_subset(n), Int(gen.uniform(2, 5)));
    const Int expected = ((n - c.S.size()) % 2 == 0 ? 1 : -1) - (c.R.size() % 2 == 0 ? 1 : -1) * ipow(c.p, n);
    EXPECT_EQ(determinant(hw_matrix(c)), expected);
  }
}

TEST(Pcone, AdjugateLemmaOnRandomInputs) {
  prop::Gen gen(1000);
  for (int n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec a = gen.vec(n, 9), b = gen.vec(n, 9);
      ASSERT_EQ(adjugate_j_formula(a, b), adjugate(cyclic_bidiagonal(a, b))) << "n=" << n;
    }
  }
}

TEST(Pcone, KernelBasis) {
  const StratumContext c = ctx_of(2, {}, {1}, 3);
  EXPECT_EQ(kernel_KS(c), hnf_basis({ha_weight(2, c)}, 2));
  EXPECT_TRUE(kernel_KS(ctx_of(3, {1}, {1, 2, 3}, 2)).empty());
}

TEST(Pcone, LimitCone) {
  const PolyCone lim = limit_cone(cone_crs(ctx_of(8, {1, 3}, {4, 6}, 2)));
  const Matrix expected{{0, 0, -1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0, 0}};
  EXPECT_EQ(lim, PolyCone::from_hrep(8, expected));
}

TEST(Pcone, GriffithsSchmid) {
  EXPECT_TRUE(gs_strict_member({1, -1}, IndexSet(2, {1})));
  EXPECT_FALSE(gs_strict_member({0, 0}, IndexSet(2, {1})));
  EXPECT_TRUE(cone_gs(2, IndexSet(2, {1})).contains({0, 0}));
  EXPECT_EQ(cone_dominant(3, IndexSet(3)), PolyCone::full_space(3));
  EXPECT_EQ(cone_dominant(3, IndexSet::full(3)), PolyCone::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Pcone, LambdaGenerators) {
  const Int p = 5;
  const std::vector<Weight> got = lambda_generators(3, IndexSet(3, {2}), p);
  const std::set<Weight> expected{{1, 0, -5}, {0, 5, 1}, {-25, 0, 1}};
  EXPECT_EQ(std::set<Weight>(got.begin(), got.end()), expected);
  EXPECT_THROW(lambda_generators(3, IndexSet::full(3), p), NoNonCompactIndex);
}

TEST(Pcone, LambdaGeneratorCountAndDominance) {
  prop::Gen gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.uniform(1, 10);
    const IndexSet R = gen.subset(n);
    if (R == IndexSet::full(n)) continue;
    const Int p = gen.uniform(2, 5);
    const auto gens = lambda_generators(n, R, p);
    EXPECT_EQ(static_cast<int>(gens.size()), n);
    const PolyCone dom = cone_dominant(n, R);
    for (const Weight& w : gens) {
      EXPECT_TRUE(dom.contains(w));
      for (int j = 1; j <= n; ++j) EXPECT_LE((PExpression{n, j, R}.evaluate(w, p)), 0);
    }
  }
}

TEST(Pcone, MinvCoordinates) {
  const IndexSet R(3, {2});
  for (const Rational& y : minv_coords({0, 0, 0}, R, 2)) EXPECT_EQ(y, 0);
  for (const Weight& w : lambda_generators(3, R, 2)) {
    for (const Rational& y : minv_coords(w, R, 2)) EXPECT_GE(y, 0);
  }
}

TEST(Pcone, LowestWeightRankTwo) {
  EXPECT_EQ(cone_lw(2, IndexSet(2), 3), PolyCone::from_hrep(2, {{1, 3}, {3, 1}}));
  EXPECT_EQ(cone_lw(2, IndexSet::full(2), 3), cone_dominant(2, IndexSet::full(2)));
}

TEST(Pcone, ClassifyFlags) {
  const PCone one{ctx_of(2, {}, {1}, 2), {PExpression{2, 1, IndexSet(2)}}};
  EXPECT_TRUE(classify_pcone(one).positive);
  const PConeFlags crs = classify_pcone(cone_crs(ctx_of(8, {1, 3}, {4, 6}, 2)));
  EXPECT_TRUE(crs.s_adapted && crs.homogeneous && crs.admissible && crs.positive && crs.hasse_admissible);
}

TEST(Pcone, ProductDecomposition) {
  const std::vector<StratumContext> f = product_decompose({2, 2}, IndexSet(4), IndexSet::full(4), Int(3));
  ASSERT_EQ(f.size(), 2u);
  const PolyCone block = cone_crs(ctx_of(2, {}, {1, 2}, 3)).realize();
  const StratumContext composite(4, IndexSet(4), IndexSet::full(4), Int(3), {2, 2});
  EXPECT_EQ(cone_crs_polycone(composite), product_cone({block, block}));
  try {
    product_decompose({2, 2}, IndexSet(4), IndexSet(4, {1}), Int(3));
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("block 2"), std::string::npos) << e.what();
  }
}

TEST(PconeProperty, ContainmentsAndGenerators) {
  prop::Gen gen(17);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen.uniform(1, 6);
    const StratumContext c(n, gen.subset(n), gen.nonempty_subset(n), Int(gen.uniform(2, 5)));
    const PolyCone pha = cone_pha_generators(c);
    const PCone crs_p = cone_crs(c);
    const PolyCone crs = crs_p.realize();
    EXPECT_TRUE(is_subcone(pha, crs).holds) << c.label();
    EXPECT_EQ(rank(crs_p.forms(), n), c.S.size());
    EXPECT_EQ(crs.lineality(), kernel_KS(c));
    EXPECT_EQ(pha.lineality(), kernel_KS(c));
    Matrix gens;
    for (int i : c.S.members()) gens.push_back(gen_weight(i, c));
    EXPECT_TRUE(generates_modulo_kernel(crs, gens)) << c.label();
  }
}

TEST(PconeProperty, ShiftEquivariance) {
  prop::Gen gen(19);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen.uniform(1, 6);
    const StratumContext c(n, gen.subset(n), gen.nonempty_subset(n), Int(gen.uniform(2, 5)));
    const int t = gen.uniform(0, n - 1);
    const StratumContext s = sigma_shift(c, t);
    EXPECT_EQ(cone_crs(s).realize(), sigma_shift(cone_crs(c).realize(), t));
    EXPECT_EQ(cone_pha_generators(s), sigma_shift(cone_pha_generators(c), t));
    EXPECT_EQ(cone_pha_adjugate(s).realize(), sigma_shift(cone_pha_adjugate(c).realize(), t));
    EXPECT_EQ(cone_lw(n, s.R, c.p), sigma_shift(cone_lw(n, c.R, c.p), t));
    EXPECT_EQ(cone_gs(n, s.R), sigma_shift(cone_gs(n, c.R), t));
  }
}

TEST(PconeProperty, LimitConeContainsOpenGriffithsSchmidIffPositive) {
  prop::Gen gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.uniform(1, 5);
    const StratumContext c(n, gen.subset(n), gen.nonempty_subset(n), Int(2));
    PCone pc{c, {}};
    for (int d : c.S.members()) pc.expressions.push_back(PExpression{n, d, gen.subset(n)});
    // A point of the open GS cone: +1 on R, -1 elsewhere.
    Vec x(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) x[i - 1] = c.R.contains(i) ? 1 : -1;
    EXPECT_EQ(limit_cone(pc).contains(x), classify_pcone(pc).positive);
  }
}
