#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "wsc/error.hpp"

namespace wsc {

/// Engine and automorphism search limit.
inline constexpr int kMaxPatternVertices = 8;

/// Unordered vertex pair, 0-based, u < v.
struct PatternEdge {
  int u = 0;
  int v = 0;
  int multiplicity = 1;

  friend bool operator==(const PatternEdge&, const PatternEdge&) = default;
};

/// m labeled vertices and a multiset of vertex pairs. Internally 0-based; the
/// text form uses 1-based labels ("3: 1-2, 2-3, 1-3").
class PatternMultigraph {
 public:
  PatternMultigraph() = default;
  explicit PatternMultigraph(int m) : m_(m) {
    if (m < 1) throw Error(ErrorCode::kParseError, "pattern needs at least one vertex");
  }

  /// Adds `multiplicity` copies of pair {u, v} (0-based).
  PatternMultigraph& add_edge(int u, int v, int multiplicity = 1) {
    if (u < 0 || v < 0 || u >= m_ || v >= m_) {
      throw Error(ErrorCode::kParseError, "pattern vertex outside 1.." + std::to_string(m_));
    }
    if (u == v) throw Error(ErrorCode::kSelfLoop, "pattern self-loop at vertex " + std::to_string(u + 1));
    if (multiplicity < 1) throw Error(ErrorCode::kParseError, "edge multiplicity must be positive");
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), PatternEdge{u, v, 0}, pair_less);
    if (it != edges_.end() && it->u == u && it->v == v) {
      it->multiplicity += multiplicity;
    } else {
      edges_.insert(it, PatternEdge{u, v, multiplicity});
    }
    return *this;
  }

  int vertex_count() const noexcept { return m_; }
  /// Distinct pairs in lexicographic order.
  const std::vector<PatternEdge>& edges() const noexcept { return edges_; }

  /// Edge count with multiplicity (the degree of homogeneity of the count).
  int total_edges() const noexcept {
    int p = 0;
    for (const PatternEdge& e : edges_) p += e.multiplicity;
    return p;
  }

  int multiplicity(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), PatternEdge{u, v, 0}, pair_less);
    return (it != edges_.end() && it->u == u && it->v == v) ? it->multiplicity : 0;
  }

  bool is_simple() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(), [](const PatternEdge& e) { return e.multiplicity == 1; });
  }

  bool is_connected() const {
    std::vector<int> parent(static_cast<std::size_t>(m_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = m_;
    for (const PatternEdge& e : edges_) {
      const int a = find(e.u);
      const int b = find(e.v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  /// "1-2, 2-3, 1-3"; a pair of multiplicity k is written k times.
  std::string edge_string() const {
    std::string out;
    for (const PatternEdge& e : edges_) {
      for (int r = 0; r < e.multiplicity; ++r) {
        if (!out.empty()) out += ", ";
        out += std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1);
      }
    }
    return out;
  }

  /// Text form accepted by parse_pattern_literal.
  std::string to_literal() const {
    const std::string edges = edge_string();
    return std::to_string(m_) + ":" + (edges.empty() ? "" : " " + edges);
  }

  /// The same pattern with vertex v renamed to perm[v].
  PatternMultigraph relabeled(const std::vector<int>& perm) const {
    if (perm.size() != static_cast<std::size_t>(m_)) {
      throw Error(ErrorCode::kShapeError, "relabeling length differs from m");
    }
    PatternMultigraph out(m_);
    for (const PatternEdge& e : edges_) out.add_edge(perm[e.u], perm[e.v], e.multiplicity);
    return out;
  }

  friend bool operator==(const PatternMultigraph&, const PatternMultigraph&) = default;

 private:
  static bool pair_less(const PatternEdge& a, const PatternEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }

  int m_ = 0;
  std::vector<PatternEdge> edges_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const std::size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const std::size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline int parse_label(std::string_view tok, std::string_view context) {
  tok = trim(tok);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::kParseError, "bad vertex label '" + std::string(tok) + "' in '" +
                                            std::string(context) + "'");
  }
  return v;
}

// m x m multiplicity table used by the permutation searches.
inline std::vector<int> multiplicity_table(const PatternMultigraph& p) {
  const int m = p.vertex_count();
  std::vector<int> t(static_cast<std::size_t>(m * m), 0);
  for (const PatternEdge& e : p.edges()) {
    t[e.u * m + e.v] = e.multiplicity;
    t[e.v * m + e.u] = e.multiplicity;
  }
  return t;
}

}  // namespace detail

/// Parses "m: a-b, c-d, ..." (1-based labels). Repeated pairs accumulate
/// multiplicity; "m:" alone is the edgeless pattern.
inline PatternMultigraph parse_pattern_literal(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "pattern literal needs the form \"m: a-b, ...\"");
  }
  const int m = detail::parse_label(text.substr(0, colon), text);
  if (m < 1) throw Error(ErrorCode::kParseError, "pattern needs at least one vertex");
  PatternMultigraph p(m);
  const std::string_view body = detail::trim(text.substr(colon + 1));
  if (body.empty()) return p;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view item = detail::trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
    const std::size_t dash = item.find('-');
    if (item.empty() || dash == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, "bad edge '" + std::string(item) + "' in '" + std::string(text) + "'");
    }
    const int a = detail::parse_label(item.substr(0, dash), text);
    const int b = detail::parse_label(item.substr(dash + 1), text);
    if (a < 1 || b < 1 || a > m || b > m) {
      throw Error(ErrorCode::kParseError, "edge " + std::string(item) + " outside 1.." + std::to_string(m));
    }
    p.add_edge(a - 1, b - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return p;
}

/// Number of vertex permutations mapping the edge multiset onto itself.
inline std::uint64_t automorphism_count(const PatternMultigraph& p) {
  const int m = p.vertex_count();
  if (m > kMaxPatternVertices) {
    throw Error(ErrorCode::kUnsupportedSize, "automorphism search supports m <= 8, got " + std::to_string(m));
  }
  const std::vector<int> table = detail::multiplicity_table(p);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (const PatternEdge& e : p.edges()) {
      if (table[perm[e.u] * m + perm[e.v]] != e.multiplicity) {
        ok = false;
        break;
      }
    }
    count += ok ? 1 : 0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// True when some relabeling of `a` equals `b`.
inline bool isomorphic(const PatternMultigraph& a, const PatternMultigraph& b) {
  const int m = a.vertex_count();
  if (m != b.vertex_count() || a.edges().size() != b.edges().size() || a.total_edges() != b.total_edges()) {
    return false;
  }
  if (m > kMaxPatternVertices) {
    throw Error(ErrorCode::kUnsupportedSize, "isomorphism search supports m <= 8");
  }
  const std::vector<int> table = detail::multiplicity_table(b);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (const PatternEdge& e : a.edges()) {
      if (table[perm[e.u] * m + perm[e.v]] != e.multiplicity) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace wsc
