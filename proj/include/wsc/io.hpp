#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/graph.hpp"
#include "wsc/matrix.hpp"

namespace wsc {

enum class GraphFormat { kAuto, kMatrix, kEdgeList };

namespace detail {

// Splits on LF, drops a trailing CR, strips '#' comments, and keeps the
// 1-based line number of every non-blank line.
inline std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t first = line.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos) continue;
    const std::size_t last = line.find_last_not_of(" \t\r\f\v");
    out.emplace_back(line_no, line.substr(first, last - first + 1));
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t start = line.find_first_not_of(" \t\r\f\v", pos);
    if (start == std::string_view::npos) break;
    std::size_t end = line.find_first_of(" \t\r\f\v", start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

inline std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

inline std::optional<std::size_t> parse_index(std::string_view tok) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

// Real number, accepting a leading '+'. Non-finite spellings parse and are
// reported by the caller as BadWeight.
inline std::optional<double> parse_real(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ptr != tok.data() + tok.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) return tok.front() == '-' ? -HUGE_VAL : HUGE_VAL;
  if (ec != std::errc{}) return std::nullopt;
  return v;
}

// Shortest decimal form that reads back to the identical double.
inline std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

/// Edge-list document: "u v w" lines with 0-based ids, '#' comments, and an
/// optional leading "n <count>" header. Without a header n = 1 + max id.
inline WeightedGraph parse_edge_list(std::string_view text) {
  const auto lines = detail::content_lines(text);
  std::optional<std::size_t> declared_n;
  std::size_t begin = 0;
  if (!lines.empty()) {
    const auto toks = detail::tokens(lines.front().second);
    if (!toks.empty() && toks.front() == "n") {
      if (toks.size() != 2) {
        throw Error(ErrorCode::kParseError, detail::where(lines.front().first) + "expected \"n <count>\"");
      }
      declared_n = detail::parse_index(toks[1]);
      if (!declared_n || *declared_n == 0) {
        throw Error(ErrorCode::kParseError,
                    detail::where(lines.front().first) + "vertex count must be a positive integer");
      }
      begin = 1;
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  std::size_t max_id = 0;
  bool any_id = false;
  for (std::size_t li = begin; li < lines.size(); ++li) {
    const auto [line_no, line] = lines[li];
    const auto toks = detail::tokens(line);
    if (toks.size() != 3) {
      throw Error(ErrorCode::kParseError, detail::where(line_no) + "expected \"u v w\"");
    }
    const auto u = detail::parse_index(toks[0]);
    const auto v = detail::parse_index(toks[1]);
    if (!u || !v) {
      throw Error(ErrorCode::kParseError, detail::where(line_no) + "vertex ids must be non-negative integers");
    }
    const auto w = detail::parse_real(toks[2]);
    if (!w) throw Error(ErrorCode::kParseError, detail::where(line_no) + "malformed weight");
    if (!std::isfinite(*w)) throw Error(ErrorCode::kBadWeight, detail::where(line_no) + "non-finite weight");
    if (declared_n && (*u >= *declared_n || *v >= *declared_n)) {
      throw Error(ErrorCode::kParseError, detail::where(line_no) + "vertex id outside declared size");
    }
    max_id = std::max({max_id, *u, *v});
    any_id = true;
    if (*u == *v) {
      if (*w != 0.0) throw Error(ErrorCode::kSelfLoop, detail::where(line_no) + "self-loop with nonzero weight");
      continue;
    }
    const auto key = std::minmax(*u, *v);
    const auto [it, inserted] = edges.emplace(key, *w);
    if (!inserted && it->second != *w) {
      throw Error(ErrorCode::kDuplicateEdge, detail::where(line_no) + "pair " + std::to_string(key.first) +
                                                 "-" + std::to_string(key.second) +
                                                 " repeated with a different weight");
    }
  }

  std::size_t n = 0;
  if (declared_n) {
    n = *declared_n;
  } else if (any_id) {
    n = max_id + 1;
  } else {
    throw Error(ErrorCode::kParseError, "edge list has no edges and no \"n <count>\" header");
  }
  Matrix m(n, n);
  for (const auto& [key, w] : edges) {
    m(key.first, key.second) = w;
    m(key.second, key.first) = w;
  }
  return WeightedGraph(std::move(m));
}

/// Whitespace-separated n rows of n reals; '#' comments allowed.
inline WeightedGraph parse_dense_matrix(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(ErrorCode::kShapeError, "matrix document has no rows");
  const std::size_t n = lines.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [line_no, line] = lines[i];
    const auto toks = detail::tokens(line);
    if (toks.size() != n) {
      throw Error(ErrorCode::kShapeError, detail::where(line_no) + "row has " + std::to_string(toks.size()) +
                                              " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = detail::parse_real(toks[j]);
      if (!v) throw Error(ErrorCode::kParseError, detail::where(line_no) + "malformed number '" +
                                                      std::string(toks[j]) + "'");
      m(i, j) = *v;
    }
  }
  return WeightedGraph(std::move(m));
}

/// Inverse of parse_dense_matrix: one row per line, shortest round-trip reals.
inline std::string render_dense(const WeightedGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (j != 0) out += ' ';
      out += detail::format_real(g(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Edge list with an "n" header and one line per nonzero pair, u < v.
inline std::string serialize_edge_list(const WeightedGraph& g) {
  std::string out = "n " + std::to_string(g.n()) + "\n";
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = i + 1; j < g.n(); ++j) {
      if (g(i, j) == 0.0) continue;
      out += std::to_string(i) + ' ' + std::to_string(j) + ' ' + detail::format_real(g(i, j)) + '\n';
    }
  }
  return out;
}

/// Format guess for kAuto. An "n" header, or every row being "int int real",
/// means an edge list; anything else is a dense matrix. Three such rows with
/// a zero main diagonal are read as a 3x3 matrix.
inline GraphFormat detect_format(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) return GraphFormat::kMatrix;
  const auto first = detail::tokens(lines.front().second);
  if (!first.empty() && first.front() == "n") return GraphFormat::kEdgeList;
  bool triples = true;
  for (const auto& [line_no, line] : lines) {
    const auto toks = detail::tokens(line);
    if (toks.size() != 3 || !detail::parse_index(toks[0]) || !detail::parse_index(toks[1])) {
      triples = false;
      break;
    }
  }
  if (!triples) return GraphFormat::kMatrix;
  if (lines.size() == 3) {
    bool zero_diagonal = true;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto v = detail::parse_real(detail::tokens(lines[i].second)[i]);
      zero_diagonal = zero_diagonal && v && *v == 0.0;
    }
    if (zero_diagonal) return GraphFormat::kMatrix;
  }
  return GraphFormat::kEdgeList;
}

inline WeightedGraph parse_graph(std::string_view text, GraphFormat format = GraphFormat::kAuto) {
  if (format == GraphFormat::kAuto) format = detect_format(text);
  return format == GraphFormat::kMatrix ? parse_dense_matrix(text) : parse_edge_list(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for '" + path + "'");
  return std::move(buf).str();
}

inline WeightedGraph load_graph(const std::string& path, GraphFormat format = GraphFormat::kAuto) {
  return parse_graph(read_file(path), format);
}

}  // namespace wsc
