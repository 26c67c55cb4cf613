#include "support.hpp"

#include "strata/index_set.hpp"
#include "strata/integer.hpp"

#include <gtest/gtest.h>

using namespace strata;

TEST(Integer, PrimitiveKeepsSign) {
  EXPECT_EQ(primitive({-4, 6, 0}), (Vec{-2, 3, 0}));
  EXPECT_EQ(primitive({0, 0}), (Vec{0, 0}));
  EXPECT_EQ(content({12, -18}), Int(6));
}

TEST(Integer, DecimalStringsRoundTrip) {
  const Vec v{Int("123456789012345678901234567890"), -7, 0};
  EXPECT_EQ(from_decimal_strings(to_decimal_strings(v)), v);
  EXPECT_EQ(to_string(Vec{1, -3, 0}), "(1,-3,0)");
}

TEST(Integer, LexOrder) {
  EXPECT_TRUE(LexLess{}(Vec{0, 5}, Vec{1, -9}));
  EXPECT_FALSE(LexLess{}(Vec{1, 2}, Vec{1, 2}));
}

TEST(IndexSet, ReduceIntoOneToN) {
  EXPECT_EQ(reduce(0, 5), 5);
  EXPECT_EQ(reduce(-1, 5), 4);
  EXPECT_EQ(reduce(11, 5), 1);
}

TEST(IndexSet, ParseAndPrint) {
  EXPECT_EQ(IndexSet::parse("", 4), IndexSet(4));
  EXPECT_EQ(IndexSet::parse(" 3, 1 ", 4), IndexSet(4, {1, 3}));
  EXPECT_EQ(IndexSet(8, {8, 3, 4, 6}).to_string(), "3,4,6,8");
  EXPECT_EQ(IndexSet(3).to_braced(), "{}");
  EXPECT_THROW(IndexSet::parse("1,,2", 4), std::invalid_argument);
  EXPECT_THROW(IndexSet::parse("5", 4), std::invalid_argument);
  EXPECT_THROW(IndexSet::parse("a", 4), std::invalid_argument);
}

TEST(IndexSet, CyclicMembership) {
  const IndexSet s(5, {1, 3});
  EXPECT_TRUE(s.contains(6));
  EXPECT_TRUE(s.contains(0 + 1));
  EXPECT_EQ(s.delta(3), -1);
  EXPECT_EQ(s.delta(2), 1);
  EXPECT_EQ(s.shifted(3), IndexSet(5, {4, 1}));
}

TEST(IndexSet, AllSubsetsCount) {
  EXPECT_EQ(all_subsets(4).size(), 16u);
  EXPECT_EQ(all_subsets(4, true).size(), 15u);
}

TEST(IndexSetProperty, ShiftIsAGroupAction) {
  prop::Gen gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = gen.uniform(1, 9);
    const IndexSet s = gen.subset(n);
    const int a = gen.uniform(-20, 20), b = gen.uniform(-20, 20);
    EXPECT_EQ(s.shifted(a).shifted(b), s.shifted(a + b));
    EXPECT_EQ(s.shifted(n), s);
    EXPECT_EQ(s.shifted(a).size(), s.size());
    EXPECT_EQ(s.complement().complement(), s);
    EXPECT_EQ(IndexSet::parse(s.to_string(), n), s);
  }
}
