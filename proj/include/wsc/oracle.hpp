#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/graph.hpp"
#include "wsc/pattern.hpp"

namespace wsc {

struct OracleConfig {
  std::size_t max_n = 12;
  int max_m = 6;
};

namespace detail {

class OracleSearch {
 public:
  OracleSearch(const PatternMultigraph& p, const WeightedGraph& g) : p_(p), g_(g) {
    const int m = p.vertex_count();
    back_edges_.resize(static_cast<std::size_t>(m));
    // Edges are charged to the later endpoint so each level multiplies in
    // the factors that just became fully assigned.
    for (const PatternEdge& e : p.edges()) back_edges_[e.v].push_back(e);
    assignment_.assign(static_cast<std::size_t>(m), 0);
    used_.assign(g.n(), false);
  }

  double run() { return descend(0, 1.0); }

 private:
  double descend(int level, double partial) {
    if (level == p_.vertex_count()) return partial;
    double total = 0.0;
    for (std::size_t x = 0; x < g_.n(); ++x) {
      if (used_[x]) continue;
      double f = partial;
      for (const PatternEdge& e : back_edges_[level]) {
        const double w = g_(assignment_[e.u], x);
        for (int r = 0; r < e.multiplicity; ++r) f *= w;
      }
      if (f == 0.0) continue;
      used_[x] = true;
      assignment_[level] = x;
      total += descend(level + 1, f);
      used_[x] = false;
    }
    return total;
  }

  const PatternMultigraph& p_;
  const WeightedGraph& g_;
  std::vector<std::vector<PatternEdge>> back_edges_;
  std::vector<std::size_t> assignment_;
  std::vector<bool> used_;
};

}  // namespace detail

/// Sum over injective maps of pattern vertices into graph vertices of the
/// product of w(u, v)^multiplicity over pattern edges. Branches whose partial
/// product is exactly zero are cut.
inline double brute_force_count(const PatternMultigraph& p, const WeightedGraph& g, const OracleConfig& cfg = {}) {
  if (cfg.max_n == 0 || cfg.max_m <= 0) throw Error(ErrorCode::kConfigError, "oracle caps must be positive");
  if (g.n() > cfg.max_n) {
    throw Error(ErrorCode::kTooLarge, "oracle limited to n <= " + std::to_string(cfg.max_n) + ", got " +
                                          std::to_string(g.n()));
  }
  if (p.vertex_count() > cfg.max_m) {
    throw Error(ErrorCode::kTooLarge, "oracle limited to m <= " + std::to_string(cfg.max_m) + ", got " +
                                          std::to_string(p.vertex_count()));
  }
  if (static_cast<std::size_t>(p.vertex_count()) > g.n()) return 0.0;
  return detail::OracleSearch(p, g).run();
}

}  // namespace wsc
