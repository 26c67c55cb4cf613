#include "support.hpp"

#include "strata/lattice.hpp"
#include "strata/polycone.hpp"

#include <gtest/gtest.h>

using namespace strata;

TEST(PolyCone, QuadrantFromBothSides) {
  const PolyCone h = PolyCone::from_hrep(2, {{-1, 0}, {0, -1}});
  const PolyCone v = PolyCone::from_generators(2, {{1, 0}, {0, 1}});
  EXPECT_EQ(h, v);
  EXPECT_EQ(h.rays(), (Matrix{{0, 1}, {1, 0}}));
  EXPECT_TRUE(h.contains({3, 0}));
  EXPECT_FALSE(h.contains({-1, 5}));
  EXPECT_EQ(h.violated_form({-1, 5}), (Vec{-1, 0}));
}

TEST(PolyCone, HalfPlaneHasLineality) {
  const PolyCone c = PolyCone::from_hrep(3, {{1, 1, 0}});
  EXPECT_EQ(c.lineality_rank(), 2);
  EXPECT_EQ(c.dimension(), 3);
  EXPECT_EQ(c.rays().size(), 1u);
}

TEST(PolyCone, EqualitiesAndZero) {
  const PolyCone line = PolyCone::from_hrep(2, {}, {{1, -1}});
  EXPECT_EQ(line.dimension(), 1);
  EXPECT_EQ(line.lineality(), (Matrix{{1, 1}}));
  EXPECT_EQ(PolyCone::zero(3).dimension(), 0);
  EXPECT_EQ(PolyCone::full_space(3).lineality_rank(), 3);
}

TEST(PolyCone, SubconeCertificate) {
  const PolyCone a = PolyCone::from_generators(2, {{1, 0}, {1, 1}});
  const PolyCone b = PolyCone::from_generators(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(is_subcone(a, b).holds);
  const SubconeResult r = is_subcone(b, a);
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_GT(dot(r.certificate->form, r.certificate->generator), 0);
}

TEST(PolyCone, SaturatedSumAndIntersection) {
  const PolyCone x = PolyCone::from_generators(2, {{1, 0}});
  const PolyCone y = PolyCone::from_generators(2, {{0, 1}});
  EXPECT_EQ(sum_saturated(x, y), PolyCone::from_hrep(2, {{-1, 0}, {0, -1}}));
  EXPECT_EQ(intersect(x, y), PolyCone::zero(2));
}

TEST(PolyCone, GeneratesModuloKernel) {
  const PolyCone c = PolyCone::from_hrep(2, {{-1, 0}, {0, -1}});
  EXPECT_TRUE(generates_modulo_kernel(c, {{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_FALSE(generates_modulo_kernel(c, {{1, 0}}));
  EXPECT_THROW(generates_modulo_kernel(c, {{-1, 0}}), GeneratorOutsideCone);
}

TEST(PolyCone, ShiftAndProduct) {
  EXPECT_EQ(sigma_shift(Vec{1, 2, 3}, 1), (Vec{3, 1, 2}));
  const PolyCone ray = PolyCone::from_generators(1, {{1}});
  const PolyCone prod = product_cone({ray, PolyCone::full_space(1)});
  EXPECT_EQ(prod, PolyCone::from_hrep(2, {{-1, 0}}));
}

namespace {

PolyCone random_cone(prop::Gen& gen, int n) {
  if (gen.coin()) return PolyCone::from_hrep(n, gen.matrix(gen.uniform(0, n + 2), n, 3));
  Matrix lines;
  if (gen.uniform(0, 3) == 0) lines = gen.matrix(1, n, 2);
  return PolyCone::from_generators(n, gen.matrix(gen.uniform(0, n + 2), n, 3), lines);
}

}  // namespace

TEST(PolyConeProperty, DoubleDescriptionRoundTrip) {
  prop::Gen gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.uniform(1, 5);
    const PolyCone c = random_cone(gen, n);
    EXPECT_EQ(dd_convert(c, ConvertDirection::h_to_v), c);
    EXPECT_EQ(dd_convert(c, ConvertDirection::v_to_h), c);
    EXPECT_EQ(PolyCone::from_generators(n, c.rays(), c.lineality()), c);
    Matrix eqs = c.equalities();
    EXPECT_EQ(PolyCone::from_hrep(n, c.facets(), eqs), c);
  }
}

TEST(PolyConeProperty, HrepAgreesWithCaratheodoryOracle) {
  prop::Gen gen(33);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = gen.uniform(1, 4);
    const Matrix gens = gen.matrix(gen.uniform(1, 5), n, 3);
    const PolyCone c = PolyCone::from_generators(n, gens);
    for (int k = 0; k < 15; ++k) {
      const Vec x = gen.vec(n, 4);
      EXPECT_EQ(c.contains(x), prop::caratheodory_member(x, gens, {})) << to_string(x);
    }
  }
}

TEST(PolyConeProperty, RaysAreExtremeAndFacetsTight) {
  prop::Gen gen(44);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.uniform(1, 5);
    const PolyCone c = random_cone(gen, n);
    for (const Vec& r : c.rays()) EXPECT_TRUE(prop::satisfies_all(r, c.hrep()));
    for (const Vec& l : c.lineality()) {
      EXPECT_TRUE(c.contains(l));
      EXPECT_TRUE(c.contains(negated(l)));
    }
    // Each facet is tight on at least dimension - lineality - 1 independent rays.
    for (const Vec& f : c.facets()) {
      Matrix tight = c.lineality();
      for (const Vec& r : c.rays()) {
        if (dot(f, r) == 0) tight.push_back(r);
      }
      EXPECT_EQ(prop::rational_rank(tight, n), c.dimension() - 1);
    }
  }
}

TEST(PolyConeProperty, IntersectionIsMeet) {
  prop::Gen gen(55);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen.uniform(1, 4);
    const PolyCone a = random_cone(gen, n), b = random_cone(gen, n);
    const PolyCone m = intersect(a, b);
    EXPECT_TRUE(is_subcone(m, a).holds);
    EXPECT_TRUE(is_subcone(m, b).holds);
    EXPECT_EQ(intersect(b, a), m);
    for (int k = 0; k < 10; ++k) {
      const Vec x = gen.vec(n, 4);
      EXPECT_EQ(m.contains(x), a.contains(x) && b.contains(x));
    }
    const PolyCone s = sum_saturated(a, b);
    EXPECT_TRUE(is_subcone(a, s).holds);
    EXPECT_TRUE(is_subcone(b, s).holds);
    EXPECT_EQ(sum_saturated(b, a), s);
  }
}

TEST(PolyConeProperty, ShiftCommutesWithMembership) {
  prop::Gen gen(66);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen.uniform(1, 5);
    const PolyCone c = random_cone(gen, n);
    const int t = gen.uniform(0, n - 1);
    const Vec x = gen.vec(n, 4);
    EXPECT_EQ(sigma_shift(c, t).contains(sigma_shift(x, t)), c.contains(x));
    EXPECT_EQ(sigma_shift(sigma_shift(c, t), n - t), c);
  }
}
