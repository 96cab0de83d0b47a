#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "wsc/graph.hpp"
#include "wsc/io.hpp"

namespace {

using wsc::ErrorCode;

template <typename Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const wsc::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kConfigError;
}

TEST(EdgeList, WeightedTriangle) {
  const wsc::WeightedGraph g = wsc::parse_edge_list("0 1 2.0\n0 2 3.0\n1 2 5.0");
  ASSERT_EQ(g.n(), 3u);
  EXPECT_EQ(g.weights(), (wsc::Matrix{{0, 2, 3}, {2, 0, 5}, {3, 5, 0}}));
}

TEST(EdgeList, HeaderOnlyIsZeroGraph) {
  const wsc::WeightedGraph g = wsc::parse_edge_list("n 4\n");
  EXPECT_EQ(g, wsc::zero_graph(4));
}

TEST(EdgeList, HeaderKeepsIsolatedVertices) {
  const wsc::WeightedGraph g = wsc::parse_edge_list("n 5\n0 1 1.5\n");
  ASSERT_EQ(g.n(), 5u);
  EXPECT_EQ(g(1, 0), 1.5);
  EXPECT_EQ(g(4, 3), 0.0);
}

TEST(EdgeList, CommentsBlankLinesAndCrlf) {
  const wsc::WeightedGraph g = wsc::parse_edge_list("# header\r\n\r\n0 1 2 # trailing\r\n  1 2 +3e0\r\n");
  ASSERT_EQ(g.n(), 3u);
  EXPECT_EQ(g(0, 1), 2.0);
  EXPECT_EQ(g(2, 1), 3.0);
}

TEST(EdgeList, ConflictingDuplicate) {
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1 1.0\n1 0 2.0"); }), ErrorCode::kDuplicateEdge);
}

TEST(EdgeList, ConsistentDuplicateAccepted) {
  const wsc::WeightedGraph g = wsc::parse_edge_list("0 1 1.0\n1 0 1.0");
  EXPECT_EQ(g(0, 1), 1.0);
}

TEST(EdgeList, SelfLoops) {
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 0 1.0\n0 1 1"); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(wsc::parse_edge_list("0 0 0\n0 1 1").n(), 2u);
}

TEST(EdgeList, BadWeights) {
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1 nan"); }), ErrorCode::kBadWeight);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1 inf"); }), ErrorCode::kBadWeight);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1 1e400"); }), ErrorCode::kBadWeight);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1 abc"); }), ErrorCode::kParseError);
}

TEST(EdgeList, MalformedLines) {
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1"); }), ErrorCode::kParseError);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("0 1 2 3"); }), ErrorCode::kParseError);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("-1 1 2"); }), ErrorCode::kParseError);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("n 2\n0 2 1"); }), ErrorCode::kParseError);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("n 0\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(error_of([] { wsc::parse_edge_list("# nothing\n"); }), ErrorCode::kParseError);
}

TEST(DenseMatrix, TwoNodes) {
  const wsc::WeightedGraph g = wsc::parse_dense_matrix("0 1\n1 0");
  ASSERT_EQ(g.n(), 2u);
  EXPECT_EQ(g(0, 1), 1.0);
}

TEST(DenseMatrix, Validation) {
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix("0 1\n2 0"); }), ErrorCode::kNotSymmetric);
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix("1 0\n0 1"); }), ErrorCode::kNonzeroDiagonal);
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix("0 1\n1"); }), ErrorCode::kShapeError);
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix("0 1 2\n1 0 3"); }), ErrorCode::kShapeError);
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix(""); }), ErrorCode::kShapeError);
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix("0 x\nx 0"); }), ErrorCode::kParseError);
  EXPECT_EQ(error_of([] { wsc::parse_dense_matrix("0 nan\nnan 0"); }), ErrorCode::kBadWeight);
}

TEST(DenseMatrix, TinyAsymmetryIsAveraged) {
  const wsc::WeightedGraph g = wsc::parse_dense_matrix("0 1\n1.0000000000000004 0");
  EXPECT_EQ(g(0, 1), g(1, 0));
}

TEST(Graph, ConstructorValidates) {
  EXPECT_EQ(error_of([] { wsc::WeightedGraph(wsc::Matrix(2, 3)); }), ErrorCode::kShapeError);
  EXPECT_EQ(error_of([] { wsc::WeightedGraph(wsc::Matrix(0, 0)); }), ErrorCode::kShapeError);
  wsc::Matrix m(2);
  m(0, 1) = m(1, 0) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(error_of([&] { wsc::WeightedGraph{m}; }), ErrorCode::kBadWeight);
}

TEST(Graph, NegativeWeightsAllowed) {
  const wsc::WeightedGraph g = wsc::parse_edge_list("0 1 -2.5");
  EXPECT_EQ(g(1, 0), -2.5);
}

TEST(DetectFormat, Heuristic) {
  EXPECT_EQ(wsc::detect_format("n 3\n"), wsc::GraphFormat::kEdgeList);
  EXPECT_EQ(wsc::detect_format("0 1 2.0\n0 2 3.0\n1 2 5.0"), wsc::GraphFormat::kEdgeList);
  EXPECT_EQ(wsc::detect_format("0 1 2\n1 0 3\n2 3 0"), wsc::GraphFormat::kMatrix);
  EXPECT_EQ(wsc::detect_format("0 1\n1 0"), wsc::GraphFormat::kMatrix);
  EXPECT_EQ(wsc::detect_format("0 1 2\n"), wsc::GraphFormat::kEdgeList);
  EXPECT_EQ(wsc::detect_format("0 0.5 1\n0.5 0 1\n1 1 0"), wsc::GraphFormat::kMatrix);
}

TEST(RoundTrip, DenseIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const wsc::WeightedGraph g = wsc::random_graph(1 + seed % 9, seed);
    EXPECT_EQ(wsc::parse_dense_matrix(wsc::render_dense(g)), g) << seed;
    EXPECT_EQ(wsc::parse_graph(wsc::render_dense(g), wsc::GraphFormat::kMatrix), g) << seed;
  }
}

TEST(RoundTrip, EdgeListIsExact) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    wsc::Matrix m = wsc::random_graph(2 + seed % 9, seed).weights();
    // Sparsify and add awkward magnitudes.
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = i + 1; j < m.cols(); ++j) {
        const double r = wsc::uniform01(rng);
        const double v = r < 0.3 ? 0.0 : (r < 0.5 ? -m(i, j) * 1e-300 : m(i, j) * 1e5);
        m(i, j) = m(j, i) = v;
      }
    }
    const wsc::WeightedGraph g(m);
    EXPECT_EQ(wsc::parse_edge_list(wsc::serialize_edge_list(g)), g) << seed;
    EXPECT_EQ(wsc::parse_graph(wsc::serialize_edge_list(g)), g) << seed;
  }
}

TEST(Files, LoadAndMissing) {
  const std::string path = ::testing::TempDir() + "wsc_io_test.txt";
  {
    std::ofstream out(path);
    out << "0 1 2.0\n0 2 3.0\n1 2 5.0\n";
  }
  EXPECT_EQ(wsc::load_graph(path)(1, 2), 5.0);
  std::remove(path.c_str());
  EXPECT_EQ(error_of([&] { wsc::load_graph(path); }), ErrorCode::kIoError);
}

TEST(RandomGraph, Deterministic) {
  const wsc::WeightedGraph a = wsc::random_graph(10, 7);
  EXPECT_EQ(a, wsc::random_graph(10, 7));
  EXPECT_FALSE(a == wsc::random_graph(10, 8));
  for (std::size_t i = 0; i < a.n(); ++i) {
    EXPECT_EQ(a(i, i), 0.0);
    for (std::size_t j = 0; j < a.n(); ++j) {
      EXPECT_EQ(a(i, j), a(j, i));
      if (i != j) {
        EXPECT_GE(a(i, j), 0.0);
        EXPECT_LT(a(i, j), 1.0);
      }
    }
  }
}

TEST(RandomGraph, PrefixStable) {
  // Row-major upper-triangle fill: the first draw is always entry (0, 1).
  EXPECT_EQ(wsc::random_graph(3, 11)(0, 1), wsc::random_graph(9, 11)(0, 1));
}

TEST(Graph, PermutedAndScaled) {
  const wsc::WeightedGraph g = wsc::random_graph(5, 1);
  std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  const wsc::WeightedGraph p = wsc::permuted(g, perm);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(p(perm[i], perm[j]), g(i, j));
  }
  EXPECT_EQ(wsc::scaled(g, 2.0)(0, 1), 2.0 * g(0, 1));
}

}  // namespace
