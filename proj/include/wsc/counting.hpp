#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wsc/catalog.hpp"
#include "wsc/count_result.hpp"
#include "wsc/engine.hpp"
#include "wsc/error.hpp"
#include "wsc/graph.hpp"
#include "wsc/oracle.hpp"
#include "wsc/pattern.hpp"

namespace wsc {

enum class Method { kAuto, kClosed, kEngine, kOracle };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::kAuto: return "auto";
    case Method::kClosed: return "closed";
    case Method::kEngine: return "engine";
    case Method::kOracle: return "oracle";
  }
  return "unknown";
}

/// Closed form for catalog ids and for literals isomorphic to a catalog
/// pattern; kAuto falls back to the engine otherwise.
inline CountResult count_spec(std::string_view spec, const WeightedGraph& g, Method method = Method::kAuto,
                              const OracleConfig& oracle = {}, bool breakdown = false) {
  spec = detail::trim(spec);
  const PatternMultigraph p = parse_pattern(spec);
  const CatalogEntry* entry = find_entry(spec);
  if (entry == nullptr) entry = match_catalog(p);

  if (method == Method::kAuto) method = entry != nullptr ? Method::kClosed : Method::kEngine;
  CountResult r;
  switch (method) {
    case Method::kClosed: {
      if (entry == nullptr) {
        throw Error(ErrorCode::kUnknownPattern, "no closed form for '" + std::string(spec) + "'");
      }
      Subexpressions cache(g);
      r.aut_count = entry->aut_count;
      r.set_labeled(eval_closed_form(*entry, cache));
      break;
    }
    case Method::kEngine:
      r = count(p, g, breakdown);
      break;
    case Method::kOracle:
      r.aut_count = automorphism_count(p);
      r.set_labeled(brute_force_count(p, g, oracle));
      break;
    case Method::kAuto:
      break;
  }
  r.pattern = std::string(spec);
  r.method = std::string(to_string(method));
  r.n = g.n();
  return r;
}

/// |x - reference| <= tol * max(|reference|, 1e-3): relative agreement with
/// an absolute floor of tol / 1000 near zero.
inline bool agrees(double x, double reference, double tol) {
  return std::abs(x - reference) <= tol * std::max(std::abs(reference), 1e-3);
}

struct VerifyMismatch {
  std::string id;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double closed = 0.0;
  double engine = 0.0;
  double oracle = 0.0;
  std::vector<TermValue> terms;
};

struct VerifyReport {
  std::size_t checks = 0;
  std::vector<VerifyMismatch> mismatches;

  bool ok() const noexcept { return mismatches.empty(); }
};

/// Closed form and engine against the oracle for every catalog pattern on
/// random_graph(n, seed) for each n and seed.
inline VerifyReport verify_catalog(const std::vector<std::size_t>& sizes, const std::vector<std::uint64_t>& seeds,
                                   double tol, const OracleConfig& oracle = {}) {
  if (tol < 0.0 || !std::isfinite(tol)) throw Error(ErrorCode::kConfigError, "tolerance must be finite and >= 0");
  for (std::size_t n : sizes) {
    if (n == 0 || n > oracle.max_n) {
      throw Error(ErrorCode::kTooLarge, "verify sizes must lie in 1.." + std::to_string(oracle.max_n));
    }
  }
  VerifyReport report;
  for (std::size_t n : sizes) {
    for (std::uint64_t seed : seeds) {
      const WeightedGraph g = random_graph(n, seed);
      Subexpressions cache(g);
      for (const CatalogEntry& e : list_patterns()) {
        const double closed = eval_closed_form(e, cache);
        const CountResult engine = count(e.pattern, g, true);
        const double reference = brute_force_count(e.pattern, g, oracle);
        report.checks += 2;
        if (!agrees(closed, reference, tol) || !agrees(engine.labeled, reference, tol)) {
          report.mismatches.push_back(VerifyMismatch{e.id, n, seed, closed, engine.labeled, reference, engine.terms});
        }
      }
    }
  }
  return report;
}

}  // namespace wsc
