#include <gtest/gtest.h>

#include <vector>

#include "alloc_tracker.hpp"
#include "wsc/catalog.hpp"
#include "wsc/graph.hpp"

namespace {

TEST(AllocTracker, SeesVectorBuffers) {
  wsc_test::alloc::PeakScope scope;
  {
    std::vector<double> v(1000);
    v[10] = 1.0;
  }
  EXPECT_GE(scope.extra_bytes(), 1000 * sizeof(double));
}

TEST(AllocTracker, CurrentReturnsToBaseline) {
  const std::size_t before = wsc_test::alloc::current_bytes();
  { std::vector<double> v(5000); }
  EXPECT_EQ(wsc_test::alloc::current_bytes(), before);
}

// Tensor formulas work slice by slice: O(n^2) extra memory, never n^3.
TEST(Memory, TensorFormulasStayQuadratic) {
  const std::size_t n = 150;
  const wsc::WeightedGraph g = wsc::random_graph(n, 1);
  const std::size_t budget = 64 * n * n * sizeof(double);
  for (const wsc::CatalogEntry& e : wsc::list_patterns()) {
    if (e.arity == wsc::ArityClass::kMatrixOnly) continue;
    wsc_test::alloc::PeakScope scope;
    const double value = wsc::eval_closed_form(e.id, g);
    EXPECT_GT(value, 0.0);
    const std::size_t extra = scope.extra_bytes();
    EXPECT_LE(extra, budget) << e.id << ": " << extra / (n * n * sizeof(double)) << " n^2 doubles";
    // A single n^3 array would already exceed this.
    EXPECT_LT(extra, n * n * n * sizeof(double)) << e.id;
  }
}

}  // namespace
