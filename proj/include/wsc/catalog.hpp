#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/formulas.hpp"
#include "wsc/graph.hpp"
#include "wsc/pattern.hpp"

namespace wsc {

using ClosedForm = double (*)(Subexpressions&);

/// One connected pattern with a closed-form evaluator. Pattern vertices
/// 1..5 correspond to the summation indices i, j, k, l, q.
struct CatalogEntry {
  std::string id;
  std::string name;     // alias accepted by find_entry; may be empty
  PatternMultigraph pattern;
  ClosedForm closed_form = nullptr;
  std::uint64_t aut_count = 0;
  ArityClass arity = ArityClass::kMatrixOnly;
  std::string summand;  // the edge monomial the pattern is read from, e.g. "A_ij A_jk A_ki"
};

namespace detail {

struct CatalogRow {
  const char* id;
  const char* name;
  int m;
  const char* edges;  // pairs over the letters i j k l q
  std::uint64_t aut;
  ArityClass arity;
  ClosedForm fn;
};

inline int index_letter(char c) {
  switch (c) {
    case 'i': return 0;
    case 'j': return 1;
    case 'k': return 2;
    case 'l': return 3;
    case 'q': return 4;
    default: throw Error(ErrorCode::kParseError, std::string("unknown index letter '") + c + "'");
  }
}

inline CatalogEntry make_entry(const CatalogRow& row) {
  CatalogEntry e;
  e.id = row.id;
  e.name = row.name;
  e.pattern = PatternMultigraph(row.m);
  e.closed_form = row.fn;
  e.aut_count = row.aut;
  e.arity = row.arity;
  const std::string_view edges = row.edges;
  for (std::size_t pos = 0; pos < edges.size(); pos += 3) {
    e.pattern.add_edge(index_letter(edges[pos]), index_letter(edges[pos + 1]));
    if (!e.summand.empty()) e.summand += ' ';
    e.summand += "A_";
    e.summand += edges.substr(pos, 2);
  }
  return e;
}

inline std::vector<CatalogEntry> build_catalog() {
  using A = ArityClass;
  namespace f = formulas;
  static constexpr CatalogRow rows[] = {
      {"t3_a", "t3_triangle", 3, "ij jk ki", 6, A::kMatrixOnly, f::t3_a},
      {"t3_b", "t3_path", 3, "ij ik", 2, A::kMatrixOnly, f::t3_b},
      {"t4_a", "t4_path", 4, "ij jk kl", 2, A::kMatrixOnly, f::t4_a},
      {"t4_b", "t4_diamond", 4, "ij jk kl li ik", 4, A::kMatrixOnly, f::t4_b},
      {"t4_c", "t4_cycle", 4, "ij jk kl li", 8, A::kMatrixOnly, f::t4_c},
      {"t4_d", "t4_star", 4, "ij ik il", 6, A::kMatrixOnly, f::t4_d},
      {"t4_e", "t4_paw", 4, "ij jk ki il", 2, A::kMatrixOnly, f::t4_e},
      {"t4_f", "t4_clique", 4, "ij jk kl li ik jl", 24, A::kTensor3, f::t4_f},
      {"f5_a", "f5_path", 5, "ij jk kl lq", 2, A::kMatrixOnly, f::f5_a},
      {"f5_b", "f5_cycle", 5, "ij jk kl lq qi", 10, A::kMatrixOnly, f::f5_b},
      {"f5_c", "f5_chair", 5, "ij jk il qi", 2, A::kMatrixOnly, f::f5_c},
      {"f5_d", "f5_banner", 5, "ij jk jq kl lq", 2, A::kMatrixOnly, f::f5_d},
      {"f5_e", "f5_k23", 5, "ij jk jl kq lq qi", 12, A::kMatrixOnly, f::f5_e},
      {"f5_f", "f5_tadpole", 5, "ij jk jq kl qi", 2, A::kMatrixOnly, f::f5_f},
      {"f5_g", "f5_bull", 5, "ij jk jq lq qi", 2, A::kMatrixOnly, f::f5_g},
      {"f5_h", "f5_house", 5, "ij jk jq kl lq qi", 2, A::kMatrixOnly, f::f5_h},
      {"f5_i", "", 5, "jk jl jq kl lq qi", 2, A::kTensor3, f::f5_i},
      {"f5_j", "", 5, "ij jk jl kl kq lq qi", 4, A::kTensor3, f::f5_j},
      {"f5_k", "f5_star", 5, "ij ik il qi", 24, A::kMatrixOnly, f::f5_k},
      {"f5_l", "f5_cricket", 5, "ij ik jk il qi", 4, A::kMatrixOnly, f::f5_l},
      {"f5_m", "f5_bowtie", 5, "ij ik jk il lq qi", 8, A::kMatrixOnly, f::f5_m},
      {"f5_n", "", 5, "ij jk jl jq kq lq", 2, A::kMatrixOnly, f::f5_n},
      {"f5_o", "", 5, "ij jl jq kl kq lq qi", 2, A::kTensor3, f::f5_o},
      {"f5_p", "", 5, "ij jk jl ki kq lq li qi", 8, A::kTensor4, f::f5_p},
      {"f5_q", "", 5, "ij jk jl jq kl kq lq", 6, A::kTensor3, f::f5_q},
      {"f5_r", "", 5, "ij jk jl jq kq lq qi", 12, A::kMatrixOnly, f::f5_r},
      {"f5_s", "", 5, "ij jk jl jq kl kq lq qi", 4, A::kTensor3, f::f5_s},
      {"f5_t", "", 5, "ij ik il iq jk jl jq kq lq", 12, A::kTensor4, f::f5_t},
      {"f5_u", "f5_clique", 5, "ij ik il iq jk jl jq kl kq lq", 120, A::kTensor4, f::f5_u},
  };
  std::vector<CatalogEntry> out;
  out.reserve(std::size(rows));
  for (const CatalogRow& row : rows) out.push_back(make_entry(row));
  return out;
}

}  // namespace detail

/// All 29 entries: t3_a..t3_b, t4_a..t4_f, f5_a..f5_u.
inline const std::vector<CatalogEntry>& list_patterns() {
  static const std::vector<CatalogEntry> catalog = detail::build_catalog();
  return catalog;
}

/// Lookup by id or alias; nullptr when absent.
inline const CatalogEntry* find_entry(std::string_view id) {
  for (const CatalogEntry& e : list_patterns()) {
    if (e.id == id || (!e.name.empty() && e.name == id)) return &e;
  }
  return nullptr;
}

inline const CatalogEntry& catalog_entry(std::string_view id) {
  const CatalogEntry* e = find_entry(id);
  if (e == nullptr) throw Error(ErrorCode::kUnknownPattern, "no catalog pattern '" + std::string(id) + "'");
  return *e;
}

/// Catalog entry isomorphic to `p`, if any.
inline const CatalogEntry* match_catalog(const PatternMultigraph& p) {
  if (p.vertex_count() < 3 || p.vertex_count() > 5 || !p.is_simple()) return nullptr;
  for (const CatalogEntry& e : list_patterns()) {
    if (isomorphic(p, e.pattern)) return &e;
  }
  return nullptr;
}

/// A catalog id or alias, or a literal "m: a-b, ...".
inline PatternMultigraph parse_pattern(std::string_view spec) {
  if (spec.find(':') != std::string_view::npos) return parse_pattern_literal(spec);
  return catalog_entry(detail::trim(spec)).pattern;
}

inline double eval_closed_form(const CatalogEntry& entry, Subexpressions& cache) {
  return entry.closed_form(cache);
}

inline double eval_closed_form(std::string_view id, Subexpressions& cache) {
  return eval_closed_form(catalog_entry(id), cache);
}

inline double eval_closed_form(std::string_view id, const WeightedGraph& g) {
  const CatalogEntry& entry = catalog_entry(id);
  Subexpressions cache(g);
  return eval_closed_form(entry, cache);
}

/// Every catalog formula on one graph, sharing one subexpression cache.
inline std::vector<std::pair<std::string, double>> eval_all_closed_forms(const WeightedGraph& g) {
  Subexpressions cache(g);
  std::vector<std::pair<std::string, double>> out;
  for (const CatalogEntry& e : list_patterns()) out.emplace_back(e.id, e.closed_form(cache));
  return out;
}

}  // namespace wsc
