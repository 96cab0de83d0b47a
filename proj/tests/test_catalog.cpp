#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "frozen_values.hpp"
#include "wsc/catalog.hpp"
#include "wsc/graph.hpp"
#include "wsc/pattern.hpp"

namespace {

const wsc::WeightedGraph& weighted_triangle() {
  static const wsc::WeightedGraph g(wsc::Matrix{{0, 2, 3}, {2, 0, 5}, {3, 5, 0}});
  return g;
}

TEST(PatternLiteral, Triangle) {
  const wsc::PatternMultigraph p = wsc::parse_pattern_literal("3: 1-2, 2-3, 1-3");
  EXPECT_EQ(p.vertex_count(), 3);
  EXPECT_EQ(p.total_edges(), 3);
  EXPECT_TRUE(p.is_simple());
  EXPECT_TRUE(p.is_connected());
  EXPECT_EQ(p.to_literal(), "3: 1-2, 1-3, 2-3");
}

TEST(PatternLiteral, AliasMatchesLiteral) {
  EXPECT_EQ(wsc::parse_pattern("t3_triangle"), wsc::parse_pattern_literal("3: 1-2, 2-3, 1-3"));
  EXPECT_EQ(wsc::parse_pattern("t3_a"), wsc::parse_pattern("t3_triangle"));
}

TEST(PatternLiteral, RepetitionIsMultiplicity) {
  const wsc::PatternMultigraph p = wsc::parse_pattern_literal("2: 1-2, 1-2");
  ASSERT_EQ(p.edges().size(), 1u);
  EXPECT_EQ(p.multiplicity(0, 1), 2);
  EXPECT_FALSE(p.is_simple());
  EXPECT_EQ(p.edge_string(), "1-2, 1-2");
  EXPECT_EQ(wsc::parse_pattern_literal(p.to_literal()), p);
}

TEST(PatternLiteral, EdgelessAndWhitespace) {
  const wsc::PatternMultigraph p = wsc::parse_pattern_literal("  4 :  ");
  EXPECT_EQ(p.vertex_count(), 4);
  EXPECT_TRUE(p.edges().empty());
  EXPECT_FALSE(p.is_connected());
  EXPECT_EQ(p.to_literal(), "4:");
  EXPECT_EQ(wsc::parse_pattern_literal("3:1-2,2-3"), wsc::parse_pattern_literal("3: 1-2, 2-3"));
}

TEST(PatternLiteral, Errors) {
  auto code = [](const char* text) {
    try {
      wsc::parse_pattern(text);
    } catch (const wsc::Error& e) {
      return e.code();
    }
    return wsc::ErrorCode::kConfigError;
  };
  EXPECT_EQ(code("3: 1-1"), wsc::ErrorCode::kSelfLoop);
  EXPECT_EQ(code("3: 1-4"), wsc::ErrorCode::kParseError);
  EXPECT_EQ(code("3: 1-2,"), wsc::ErrorCode::kParseError);
  EXPECT_EQ(code("3: 12"), wsc::ErrorCode::kParseError);
  EXPECT_EQ(code("x: 1-2"), wsc::ErrorCode::kParseError);
  EXPECT_EQ(code("0:"), wsc::ErrorCode::kParseError);
  EXPECT_EQ(code("t9_z"), wsc::ErrorCode::kUnknownPattern);
  EXPECT_EQ(code(""), wsc::ErrorCode::kUnknownPattern);
}

TEST(Automorphisms, KnownValues) {
  EXPECT_EQ(wsc::automorphism_count(wsc::parse_pattern("t3_a")), 6u);
  EXPECT_EQ(wsc::automorphism_count(wsc::parse_pattern("2: 1-2")), 2u);
  EXPECT_EQ(wsc::automorphism_count(wsc::parse_pattern("f5_b")), 10u);
  EXPECT_EQ(wsc::automorphism_count(wsc::parse_pattern("4:")), 24u);
  EXPECT_EQ(wsc::automorphism_count(wsc::parse_pattern("3: 1-2, 1-2, 2-3")), 1u);
}

TEST(Automorphisms, TooLarge) {
  try {
    wsc::automorphism_count(wsc::PatternMultigraph(9));
    FAIL();
  } catch (const wsc::Error& e) {
    EXPECT_EQ(e.code(), wsc::ErrorCode::kUnsupportedSize);
  }
}

TEST(Catalog, Inventory) {
  const auto& all = wsc::list_patterns();
  ASSERT_EQ(all.size(), 29u);
  std::set<std::string> ids;
  int by_size[6] = {};
  for (const wsc::CatalogEntry& e : all) {
    ids.insert(e.id);
    ++by_size[e.pattern.vertex_count()];
    EXPECT_TRUE(e.pattern.is_connected()) << e.id;
    EXPECT_TRUE(e.pattern.is_simple()) << e.id;
    EXPECT_EQ(e.aut_count, wsc::automorphism_count(e.pattern)) << e.id;
    EXPECT_NE(e.closed_form, nullptr) << e.id;
    EXPECT_FALSE(e.summand.empty()) << e.id;
  }
  EXPECT_EQ(ids.size(), 29u);
  EXPECT_EQ(by_size[3], 2);
  EXPECT_EQ(by_size[4], 6);
  EXPECT_EQ(by_size[5], 21);
}

TEST(Catalog, PairwiseNonIsomorphic) {
  const auto& all = wsc::list_patterns();
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      EXPECT_FALSE(wsc::isomorphic(all[a].pattern, all[b].pattern)) << all[a].id << " " << all[b].id;
    }
  }
}

TEST(Catalog, EdgeLists) {
  EXPECT_EQ(wsc::catalog_entry("t4_f").pattern, wsc::parse_pattern("4: 1-2, 2-3, 3-4, 4-1, 1-3, 2-4"));
  EXPECT_EQ(wsc::catalog_entry("t4_f").summand, "A_ij A_jk A_kl A_li A_ik A_jl");
  const wsc::PatternMultigraph& k5 = wsc::catalog_entry("f5_u").pattern;
  EXPECT_EQ(k5.total_edges(), 10);
  for (int u = 0; u < 5; ++u) {
    for (int v = u + 1; v < 5; ++v) EXPECT_EQ(k5.multiplicity(u, v), 1);
  }
}

TEST(Catalog, ArityClasses) {
  std::set<std::string> tensor3, tensor4;
  for (const wsc::CatalogEntry& e : wsc::list_patterns()) {
    if (e.arity == wsc::ArityClass::kTensor3) tensor3.insert(e.id);
    if (e.arity == wsc::ArityClass::kTensor4) tensor4.insert(e.id);
  }
  EXPECT_EQ(tensor3, (std::set<std::string>{"t4_f", "f5_i", "f5_j", "f5_o", "f5_q", "f5_s"}));
  EXPECT_EQ(tensor4, (std::set<std::string>{"f5_p", "f5_t", "f5_u"}));
}

TEST(Catalog, MatchByIsomorphism) {
  const wsc::CatalogEntry* e = wsc::match_catalog(wsc::parse_pattern("5: 3-1, 1-4, 4-2, 2-5, 5-3"));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->id, "f5_b");
  EXPECT_EQ(wsc::match_catalog(wsc::parse_pattern("3: 1-2, 1-2, 2-3")), nullptr);
  EXPECT_EQ(wsc::match_catalog(wsc::parse_pattern("6: 1-2")), nullptr);
  EXPECT_EQ(wsc::match_catalog(wsc::parse_pattern("2: 1-2")), nullptr);
  EXPECT_EQ(wsc::find_entry("nope"), nullptr);
}

TEST(ClosedForms, FrozenOracleValues) {
  const wsc::WeightedGraph g = wsc::random_graph(wsc_test::kFrozenN, wsc_test::kFrozenSeed);
  wsc::Subexpressions cache(g);
  for (const auto& f : wsc_test::kFrozenCatalog) {
    EXPECT_NEAR(wsc::eval_closed_form(f.spec, cache), f.labeled, 1e-9 * f.labeled) << f.spec;
  }
}

TEST(ClosedForms, HandCheckedValues) {
  EXPECT_DOUBLE_EQ(wsc::eval_closed_form("t3_a", weighted_triangle()), 180.0);
  EXPECT_DOUBLE_EQ(wsc::eval_closed_form("t3_b", weighted_triangle()), 62.0);
  EXPECT_DOUBLE_EQ(wsc::eval_closed_form("t4_c", wsc::complete_graph(4)), 24.0);
  EXPECT_DOUBLE_EQ(wsc::eval_closed_form("t4_f", wsc::complete_graph(4)), 24.0);
  EXPECT_DOUBLE_EQ(wsc::eval_closed_form("f5_u", wsc::complete_graph(5)), 120.0);
}

TEST(ClosedForms, CliquePowers) {
  const double c = 1.25;
  EXPECT_NEAR(wsc::eval_closed_form("t4_f", wsc::complete_graph(4, c)), 24.0 * std::pow(c, 6), 1e-9);
  EXPECT_NEAR(wsc::eval_closed_form("f5_u", wsc::complete_graph(5, c)), 120.0 * std::pow(c, 10), 1e-8);
}

TEST(ClosedForms, ZeroOnSmallOrEmptyGraphs) {
  for (const wsc::CatalogEntry& e : wsc::list_patterns()) {
    EXPECT_NEAR(wsc::eval_closed_form(e.id, wsc::zero_graph(6)), 0.0, 1e-12) << e.id;
    const std::size_t too_small = static_cast<std::size_t>(e.pattern.vertex_count() - 1);
    EXPECT_NEAR(wsc::eval_closed_form(e.id, wsc::random_graph(too_small, 3)), 0.0, 1e-10) << e.id;
  }
}

TEST(ClosedForms, UnweightedCompleteGraphGivesFallingFactorial) {
  // Every injective map into K_n contributes 1.
  for (std::size_t n : {5, 7}) {
    for (const wsc::CatalogEntry& e : wsc::list_patterns()) {
      double falling = 1.0;
      for (int i = 0; i < e.pattern.vertex_count(); ++i) falling *= static_cast<double>(n - i);
      EXPECT_NEAR(wsc::eval_closed_form(e.id, wsc::complete_graph(n)), falling, 1e-9 * falling) << e.id;
    }
  }
}

TEST(ClosedForms, EvalAllSharesCache) {
  const wsc::WeightedGraph g = wsc::random_graph(9, 4);
  const auto all = wsc::eval_all_closed_forms(g);
  ASSERT_EQ(all.size(), 29u);
  for (const auto& [id, value] : all) EXPECT_EQ(value, wsc::eval_closed_form(id, g)) << id;
}

}  // namespace
