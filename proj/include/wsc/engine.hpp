#pragma once

// General counting pipeline: the labeled count of a pattern is the Moebius
// inversion over set partitions of its vertices,
//
//   L = sum_sigma mu(0, sigma) M_sigma,
//
// where M_sigma is an unrestricted sum over one index per block of the
// contracted pattern. Partitions with a pattern edge inside a block vanish
// (zero diagonal) and are dropped before evaluation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsc/count_result.hpp"
#include "wsc/error.hpp"
#include "wsc/graph.hpp"
#include "wsc/kernels.hpp"
#include "wsc/partition.hpp"
#include "wsc/pattern.hpp"

namespace wsc {

/// Quotient of a pattern by a partition: one vertex per block, edges mapped
/// to block pairs with accumulated multiplicity.
struct ContractedPattern {
  int k = 0;                      // number of blocks
  std::vector<PatternEdge> edges; // block pairs, 0-based, u < v
  int free_factor_exponent = 0;   // blocks touching no edge

  /// Total multiplicity, i.e. the degree of homogeneity of the term.
  int total_edges() const {
    int p = 0;
    for (const PatternEdge& e : edges) p += e.multiplicity;
    return p;
  }

  PatternMultigraph as_pattern() const {
    PatternMultigraph p(k);
    for (const PatternEdge& e : edges) p.add_edge(e.u, e.v, e.multiplicity);
    return p;
  }

  friend bool operator==(const ContractedPattern&, const ContractedPattern&) = default;
};

/// Nothing when some pattern edge has both endpoints in one block.
inline std::optional<ContractedPattern> contract_pattern(const PatternMultigraph& p, const Partition& part) {
  if (part.element_count() != p.vertex_count()) {
    throw Error(ErrorCode::kShapeError, "partition size differs from pattern size");
  }
  const std::vector<int>& block_of = part.block_of();
  PatternMultigraph quotient(part.block_count());
  for (const PatternEdge& e : p.edges()) {
    if (block_of[e.u] == block_of[e.v]) return std::nullopt;
    quotient.add_edge(block_of[e.u], block_of[e.v], e.multiplicity);
  }
  ContractedPattern c;
  c.k = part.block_count();
  c.edges = quotient.edges();
  std::vector<bool> touched(static_cast<std::size_t>(c.k), false);
  for (const PatternEdge& e : c.edges) touched[e.u] = touched[e.v] = true;
  c.free_factor_exponent = static_cast<int>(std::count(touched.begin(), touched.end(), false));
  return c;
}

struct PlanTerm {
  std::int64_t coefficient = 0;
  Partition partition;
  ContractedPattern contracted;
};

struct EvaluationPlan {
  PatternMultigraph pattern;
  std::vector<PlanTerm> terms;
};

/// Surviving terms ordered by block count (finest partition first), then by
/// restricted growth string.
inline EvaluationPlan build_plan(const PatternMultigraph& p) {
  EvaluationPlan plan;
  plan.pattern = p;
  for (Partition& part : enumerate_partitions(p.vertex_count())) {
    auto contracted = contract_pattern(p, part);
    if (!contracted) continue;
    const std::int64_t mu = mobius_coefficient(part);
    plan.terms.push_back(PlanTerm{mu, std::move(part), std::move(*contracted)});
  }
  std::stable_sort(plan.terms.begin(), plan.terms.end(), [](const PlanTerm& a, const PlanTerm& b) {
    return a.partition.block_count() > b.partition.block_count();
  });
  return plan;
}

/// One line per term: "coeff<TAB>signature<TAB>contracted-edges". The edge
/// field is the contracted pattern in literal form, blocks numbered 1..k.
inline std::string explain_plan(const EvaluationPlan& plan) {
  std::string out;
  for (const PlanTerm& t : plan.terms) {
    out += std::to_string(t.coefficient) + '\t' + t.partition.signature_string() + '\t' +
           t.contracted.as_pattern().to_literal() + '\n';
  }
  return out;
}

namespace detail {

// Factor graph of an unrestricted block sum: unary vectors and pairwise
// matrices over index variables. Pairwise factors are shared so that pivot
// branches copy pointers, not matrices.
class FactorGraph {
 public:
  using Shared = std::shared_ptr<const Matrix>;

  FactorGraph(int k, std::size_t n) : n_(n), alive_(static_cast<std::size_t>(k), true), unary_(k) {}

  // Adds (or Hadamard-merges) a factor m[x_u, x_v].
  void add_pair(int u, int v, Shared m) {
    if (u > v) {
      std::swap(u, v);
      m = std::make_shared<const Matrix>(transpose(*m));
    }
    auto [it, inserted] = pairs_.emplace(std::make_pair(u, v), m);
    if (!inserted) it->second = std::make_shared<const Matrix>(hadamard(*it->second, *m));
  }

  void drop(int v) { alive_[v] = false; }

  void multiply_unary(int v, const Vector& x) {
    auto& slot = unary_[v];
    if (!slot) {
      slot = x;
    } else {
      for (std::size_t i = 0; i < n_; ++i) (*slot)[i] *= x[i];
    }
  }

  double evaluate() {
    double scalar = 1.0;
    while (true) {
      const int v = pick_min_degree();
      if (v < 0) return scalar;
      const std::vector<int> nbrs = neighbors(v);
      if (nbrs.size() >= 3) return scalar * pivot();
      if (nbrs.empty()) {
        scalar *= unary_[v] ? sum(*unary_[v]) : static_cast<double>(n_);
      } else if (nbrs.size() == 1) {
        eliminate_leaf(v, nbrs[0]);
      } else {
        eliminate_chain(v, nbrs[0], nbrs[1]);
      }
      remove(v);
      if (scalar == 0.0) return 0.0;
    }
  }

 private:
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [key, m] : pairs_) {
      if (key.first == v) out.push_back(key.second);
      if (key.second == v) out.push_back(key.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int pick_min_degree() const {
    int best = -1;
    std::size_t best_degree = 0;
    for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
      if (!alive_[v]) continue;
      const std::size_t d = neighbors(v).size();
      if (best < 0 || d < best_degree) {
        best = v;
        best_degree = d;
      }
    }
    return best;
  }

  // Factor oriented as rows x_a, columns x_b.
  Matrix oriented(int a, int b) const {
    if (a < b) return *pairs_.at({a, b});
    return transpose(*pairs_.at({b, a}));
  }

  void eliminate_leaf(int v, int w) {
    // sum_y M[x_w, y] u_v[y]
    const Matrix m = oriented(w, v);
    const Vector x = unary_[v] ? matvec(m, *unary_[v]) : row_sums(m);
    multiply_unary(w, x);
  }

  void eliminate_chain(int v, int u, int w) {
    // sum_y M[x_u, y] u_v[y] N[y, x_w]
    Matrix left = oriented(u, v);
    if (unary_[v]) left = scale_cols(left, *unary_[v]);
    add_pair(u, w, std::make_shared<const Matrix>(matmul(left, oriented(v, w))));
  }

  void remove(int v) {
    alive_[v] = false;
    unary_[v].reset();
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      it = (it->first.first == v || it->first.second == v) ? pairs_.erase(it) : std::next(it);
    }
  }

  // Every live variable has degree >= 3: fix the highest-degree one (lowest
  // label on ties) to each value in turn and evaluate the rest.
  double pivot() const {
    int p = -1;
    std::size_t best = 0;
    for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
      if (!alive_[v]) continue;
      const std::size_t d = neighbors(v).size();
      if (p < 0 || d > best) {
        p = v;
        best = d;
      }
    }
    double total = 0.0;
    for (std::size_t x = 0; x < n_; ++x) {
      const double weight = unary_[p] ? (*unary_[p])[x] : 1.0;
      if (weight == 0.0) continue;
      FactorGraph sub = *this;
      sub.alive_[p] = false;
      sub.unary_[p].reset();
      for (auto it = sub.pairs_.begin(); it != sub.pairs_.end();) {
        const auto [a, b] = it->first;
        if (a != p && b != p) {
          ++it;
          continue;
        }
        const Matrix& m = *it->second;
        Vector slice(n_);
        if (a == p) {
          for (std::size_t y = 0; y < n_; ++y) slice[y] = m(x, y);
          sub.multiply_unary(b, slice);
        } else {
          for (std::size_t y = 0; y < n_; ++y) slice[y] = m(y, x);
          sub.multiply_unary(a, slice);
        }
        it = sub.pairs_.erase(it);
      }
      total += weight * sub.evaluate();
    }
    return total;
  }

  std::size_t n_;
  std::vector<bool> alive_;
  std::vector<std::optional<Vector>> unary_;
  std::map<std::pair<int, int>, Shared> pairs_;
};

}  // namespace detail

/// sum over x_1..x_k in [0, n) of prod over contracted edges of
/// A[x_u, x_v]^mult, by greedy minimum-degree index elimination.
inline double evaluate_gbs(const ContractedPattern& c, const WeightedGraph& g) {
  const std::size_t n = g.n();
  std::map<int, std::shared_ptr<const Matrix>> powers;
  detail::FactorGraph fg(c.k, n);
  std::vector<bool> touched(static_cast<std::size_t>(c.k), false);
  for (const PatternEdge& e : c.edges) {
    auto& m = powers[e.multiplicity];
    if (!m) m = std::make_shared<const Matrix>(hadamard_power(g.weights(), e.multiplicity));
    fg.add_pair(e.u, e.v, m);
    touched[e.u] = touched[e.v] = true;
  }
  // Blocks touching no edge contribute the n^free factor instead.
  for (int v = 0; v < c.k; ++v) {
    if (!touched[v]) fg.drop(v);
  }
  double free_factor = 1.0;
  for (int i = 0; i < c.free_factor_exponent; ++i) free_factor *= static_cast<double>(n);
  return free_factor * fg.evaluate();
}

/// Labeled count by Moebius inversion; `breakdown` keeps per-term values.
inline CountResult count(const PatternMultigraph& p, const WeightedGraph& g, bool breakdown = false) {
  const EvaluationPlan plan = build_plan(p);
  CountResult r;
  r.pattern = p.to_literal();
  r.method = "engine";
  r.n = g.n();
  r.aut_count = automorphism_count(p);
  double total = 0.0;
  for (const PlanTerm& t : plan.terms) {
    const double value = evaluate_gbs(t.contracted, g);
    total += static_cast<double>(t.coefficient) * value;
    if (breakdown) {
      r.terms.push_back(TermValue{t.coefficient, t.partition.signature_string(),
                                  t.contracted.as_pattern().to_literal(), value});
    }
  }
  r.set_labeled(total);
  return r;
}

}  // namespace wsc
