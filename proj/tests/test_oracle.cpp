#include <gtest/gtest.h>

#include "frozen_values.hpp"
#include "wsc/catalog.hpp"
#include "wsc/graph.hpp"
#include "wsc/oracle.hpp"

namespace {

wsc::WeightedGraph weighted_triangle() {
  return wsc::WeightedGraph(wsc::Matrix{{0, 2, 3}, {2, 0, 5}, {3, 5, 0}});
}

TEST(Oracle, FrozenCatalogValues) {
  const wsc::WeightedGraph g = wsc::random_graph(wsc_test::kFrozenN, wsc_test::kFrozenSeed);
  for (const auto& f : wsc_test::kFrozenCatalog) {
    EXPECT_NEAR(wsc::brute_force_count(wsc::parse_pattern(f.spec), g), f.labeled, 1e-12 * f.labeled) << f.spec;
  }
}

TEST(Oracle, FrozenLiteralValues) {
  const wsc::WeightedGraph g = wsc::random_graph(wsc_test::kFrozenN, wsc_test::kFrozenSeed);
  for (const auto& f : wsc_test::kFrozenLiterals) {
    EXPECT_NEAR(wsc::brute_force_count(wsc::parse_pattern(f.spec), g), f.labeled, 1e-12 * f.labeled) << f.spec;
  }
}

TEST(Oracle, TriangleOnWeightedTriangle) {
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("t3_a"), weighted_triangle()), 180.0);
}

TEST(Oracle, SingleEdgeIsTwiceTotalWeight) {
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("2: 1-2"), weighted_triangle()), 20.0);
}

TEST(Oracle, ThreePathOnWeightedTriangle) {
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("t3_b"), weighted_triangle()), 62.0);
}

TEST(Oracle, FewerGraphVerticesThanPatternGivesZero) {
  EXPECT_EQ(wsc::brute_force_count(wsc::parse_pattern("f5_b"), wsc::complete_graph(4)), 0.0);
  EXPECT_EQ(wsc::brute_force_count(wsc::parse_pattern("t4_f"), wsc::complete_graph(3)), 0.0);
}

TEST(Oracle, CliquesOnCompleteGraphs) {
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("t4_f"), wsc::complete_graph(4)), 24.0);
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("f5_u"), wsc::complete_graph(5)), 120.0);
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("t3_a"), wsc::complete_graph(6)), 120.0);
}

TEST(Oracle, EmptyPatternIsFallingFactorial) {
  EXPECT_DOUBLE_EQ(wsc::brute_force_count(wsc::parse_pattern("5:"), wsc::zero_graph(10)), 30240.0);
}

TEST(Oracle, ZeroGraphGivesZero) {
  for (const auto& e : wsc::list_patterns()) {
    EXPECT_EQ(wsc::brute_force_count(e.pattern, wsc::zero_graph(6)), 0.0) << e.id;
  }
}

TEST(Oracle, SizeCaps) {
  const wsc::WeightedGraph big = wsc::random_graph(13, 1);
  try {
    wsc::brute_force_count(wsc::parse_pattern("t3_a"), big);
    FAIL() << "expected TooLarge";
  } catch (const wsc::Error& e) {
    EXPECT_EQ(e.code(), wsc::ErrorCode::kTooLarge);
  }
  try {
    wsc::brute_force_count(wsc::parse_pattern("7: 1-2"), wsc::random_graph(8, 1));
    FAIL() << "expected TooLarge";
  } catch (const wsc::Error& e) {
    EXPECT_EQ(e.code(), wsc::ErrorCode::kTooLarge);
  }
  wsc::OracleConfig wide;
  wide.max_n = 13;
  EXPECT_GT(wsc::brute_force_count(wsc::parse_pattern("t3_a"), big, wide), 0.0);
}

TEST(Oracle, NonPositiveCapIsConfigError) {
  wsc::OracleConfig cfg;
  cfg.max_n = 0;
  try {
    wsc::brute_force_count(wsc::parse_pattern("t3_a"), wsc::complete_graph(3), cfg);
    FAIL() << "expected ConfigError";
  } catch (const wsc::Error& e) {
    EXPECT_EQ(e.code(), wsc::ErrorCode::kConfigError);
  }
}

}  // namespace
