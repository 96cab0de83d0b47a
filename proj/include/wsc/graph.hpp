#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/matrix.hpp"

namespace wsc {

/// Absolute tolerance for w_ij vs w_ji on ingest; accepted matrices are then
/// symmetrized by averaging.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Dense weighted undirected graph: a symmetric n x n matrix with zero
/// diagonal and finite entries. Immutable once constructed.
class WeightedGraph {
 public:
  explicit WeightedGraph(Matrix weights) : weights_(std::move(weights)) { validate_and_symmetrize(); }

  std::size_t n() const noexcept { return weights_.rows(); }
  const Matrix& weights() const noexcept { return weights_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return weights_(i, j); }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  void validate_and_symmetrize() {
    if (!weights_.square()) {
      throw Error(ErrorCode::kShapeError, "weight matrix is " + std::to_string(weights_.rows()) +
                                              "x" + std::to_string(weights_.cols()));
    }
    if (weights_.rows() == 0) throw Error(ErrorCode::kShapeError, "graph has no vertices");
    const std::size_t n = weights_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(weights_(i, j))) {
          throw Error(ErrorCode::kBadWeight, "non-finite weight at (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ")");
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (weights_(i, i) != 0.0) {
        throw Error(ErrorCode::kNonzeroDiagonal, "diagonal entry " + std::to_string(i) + " is nonzero");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = weights_(i, j);
        const double b = weights_(j, i);
        if (std::abs(a - b) > kSymmetryTolerance) {
          throw Error(ErrorCode::kNotSymmetric,
                      "w(" + std::to_string(i) + "," + std::to_string(j) + ") != w(" +
                          std::to_string(j) + "," + std::to_string(i) + ")");
        }
        if (a != b) {
          const double mean = 0.5 * (a + b);
          weights_(i, j) = mean;
          weights_(j, i) = mean;
        }
      }
    }
  }

  Matrix weights_;
};

/// Generator used for every seeded random graph; recorded in bench output.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits, independent of the
/// standard library's distribution implementation.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Upper triangle i.i.d. U[0, 1) (row-major order), mirrored, zero diagonal.
inline WeightedGraph random_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = uniform01(rng);
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return WeightedGraph(std::move(w));
}

/// Unweighted complete graph K_n with every edge weight equal to `weight`.
inline WeightedGraph complete_graph(std::size_t n, double weight = 1.0) {
  Matrix w(n, n, weight);
  for (std::size_t i = 0; i < n; ++i) w(i, i) = 0.0;
  return WeightedGraph(std::move(w));
}

inline WeightedGraph zero_graph(std::size_t n) { return WeightedGraph(Matrix(n, n)); }

/// P A P^T: vertex i of the input becomes vertex perm[i].
inline WeightedGraph permuted(const WeightedGraph& g, std::span<const std::size_t> perm) {
  const std::size_t n = g.n();
  if (perm.size() != n) throw Error(ErrorCode::kShapeError, "permutation length differs from n");
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(perm[i], perm[j]) = g(i, j);
  }
  return WeightedGraph(std::move(w));
}

inline WeightedGraph scaled(const WeightedGraph& g, double c) {
  Matrix w = g.weights();
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (double& e : w.row(i)) e *= c;
  }
  return WeightedGraph(std::move(w));
}

}  // namespace wsc
