#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wsc/catalog.hpp"
#include "wsc/engine.hpp"
#include "wsc/error.hpp"
#include "wsc/graph.hpp"
#include "wsc/io.hpp"
#include "wsc/pattern.hpp"

namespace wsc {

enum class BenchMethod { kClosedForm, kEngine, kNaiveLoop };

constexpr std::string_view to_string(BenchMethod m) {
  switch (m) {
    case BenchMethod::kClosedForm: return "closed_form";
    case BenchMethod::kEngine: return "engine";
    case BenchMethod::kNaiveLoop: return "naive_loop";
  }
  return "unknown";
}

struct BenchRecord {
  std::string pattern_id;
  BenchMethod method = BenchMethod::kClosedForm;
  std::size_t n = 0;
  int reps = 0;
  double mean_seconds = 0.0;
  double result_value = 0.0;
};

/// Size limits per method; requests beyond the closed-form limits are
/// rejected, the other methods are skipped above theirs.
struct BenchLimits {
  std::size_t matrix_only = 2000;
  std::size_t tensor3 = 500;
  std::size_t tensor4 = 300;
  std::size_t engine = 100;
  std::size_t naive = 50;
  int naive_max_m = 5;
};

struct BenchConfig {
  std::vector<std::string> ids;
  std::vector<std::size_t> sizes;
  int reps = 10;
  std::uint64_t seed = 0;
  bool include_engine = true;
  bool include_naive = true;
  BenchLimits limits;
};

namespace detail {

// m nested loops over distinct indices. The factors of edges whose later
// endpoint is level t are multiplied in at level t, so each level keeps the
// partial product of the levels above it.
class NaiveLoop {
 public:
  NaiveLoop(const PatternMultigraph& p, const WeightedGraph& g) : g_(g), m_(p.vertex_count()) {
    for (const PatternEdge& e : p.edges()) {
      for (int r = 0; r < e.multiplicity; ++r) level_edges_[e.v].push_back(e.u);
    }
  }

  double run() const {
    const std::size_t n = g_.n();
    if (static_cast<std::size_t>(m_) > n) return 0.0;
    std::size_t x[5] = {};
    double total = 0.0;
    // Level 0 has no completed edges.
    for (x[0] = 0; x[0] < n; ++x[0]) {
      if (m_ == 1) {
        total += 1.0;
        continue;
      }
      for (x[1] = 0; x[1] < n; ++x[1]) {
        if (x[1] == x[0]) continue;
        const double p1 = factor(1, x);
        if (m_ == 2) {
          total += p1;
          continue;
        }
        for (x[2] = 0; x[2] < n; ++x[2]) {
          if (x[2] == x[0] || x[2] == x[1]) continue;
          const double p2 = p1 * factor(2, x);
          if (m_ == 3) {
            total += p2;
            continue;
          }
          for (x[3] = 0; x[3] < n; ++x[3]) {
            if (x[3] == x[0] || x[3] == x[1] || x[3] == x[2]) continue;
            const double p3 = p2 * factor(3, x);
            if (m_ == 4) {
              total += p3;
              continue;
            }
            for (x[4] = 0; x[4] < n; ++x[4]) {
              if (x[4] == x[0] || x[4] == x[1] || x[4] == x[2] || x[4] == x[3]) continue;
              total += p3 * factor(4, x);
            }
          }
        }
      }
    }
    return total;
  }

 private:
  double factor(int level, const std::size_t* x) const {
    double f = 1.0;
    for (int u : level_edges_[level]) f *= g_(x[u], x[level]);
    return f;
  }

  const WeightedGraph& g_;
  int m_;
  std::vector<int> level_edges_[5];
};

inline double elapsed_seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace detail

/// Plain nested-loop count for patterns with at most five vertices.
inline double naive_loop_count(const PatternMultigraph& p, const WeightedGraph& g) {
  if (p.vertex_count() > 5) throw Error(ErrorCode::kConfigError, "naive loop supports m <= 5");
  return detail::NaiveLoop(p, g).run();
}

/// One untimed warm-up call, then the mean over `reps` timed calls. The
/// last value is returned through `value`.
inline double time_mean(const std::function<double()>& fn, int reps, double& value) {
  value = fn();
  double total = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    value = fn();
    total += detail::elapsed_seconds(start);
  }
  // steady_clock ticks are nanoseconds; keep the mean strictly positive.
  return std::max(total / reps, 1e-9);
}

inline std::size_t closed_form_limit(const CatalogEntry& e, const BenchLimits& limits) {
  switch (e.arity) {
    case ArityClass::kMatrixOnly: return limits.matrix_only;
    case ArityClass::kTensor3: return limits.tensor3;
    case ArityClass::kTensor4: return limits.tensor4;
  }
  return 0;
}

inline void validate(const BenchConfig& cfg) {
  if (cfg.ids.empty()) throw Error(ErrorCode::kConfigError, "no pattern ids given");
  if (cfg.sizes.empty()) throw Error(ErrorCode::kConfigError, "no sizes given");
  if (cfg.reps < 3) throw Error(ErrorCode::kConfigError, "reps must be at least 3");
  for (const std::string& id : cfg.ids) {
    const CatalogEntry* e = find_entry(id);
    if (e == nullptr) throw Error(ErrorCode::kConfigError, "unknown pattern id '" + id + "'");
    for (std::size_t n : cfg.sizes) {
      if (n == 0) throw Error(ErrorCode::kConfigError, "sizes must be positive");
      const std::size_t limit = closed_form_limit(*e, cfg.limits);
      if (n > limit) {
        throw Error(ErrorCode::kConfigError, "n = " + std::to_string(n) + " exceeds the " +
                                                 std::string(to_string(e->arity)) + " limit " +
                                                 std::to_string(limit) + " for " + id);
      }
    }
  }
}

/// For each size one random graph (seeded with cfg.seed) is drawn; every id
/// is then timed with each applicable method. Records are ordered by size,
/// then id, then method.
inline std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  validate(cfg);
  std::vector<BenchRecord> out;
  for (std::size_t n : cfg.sizes) {
    const WeightedGraph g = random_graph(n, cfg.seed);
    for (const std::string& id : cfg.ids) {
      const CatalogEntry& e = catalog_entry(id);
      auto record = [&](BenchMethod method, const std::function<double()>& fn) {
        BenchRecord r;
        r.pattern_id = e.id;
        r.method = method;
        r.n = n;
        r.reps = cfg.reps;
        r.mean_seconds = time_mean(fn, cfg.reps, r.result_value);
        out.push_back(r);
      };
      record(BenchMethod::kClosedForm, [&] { return eval_closed_form(e.id, g); });
      if (cfg.include_engine && n <= cfg.limits.engine) {
        record(BenchMethod::kEngine, [&] { return count(e.pattern, g).labeled; });
      }
      if (cfg.include_naive && n <= cfg.limits.naive && e.pattern.vertex_count() <= cfg.limits.naive_max_m) {
        record(BenchMethod::kNaiveLoop, [&] { return naive_loop_count(e.pattern, g); });
      }
    }
  }
  return out;
}

inline constexpr std::string_view kBenchCsvHeader = "pattern_id,method,n,reps,mean_seconds,result_value";

inline std::string to_csv_row(const BenchRecord& r) {
  return r.pattern_id + ',' + std::string(to_string(r.method)) + ',' + std::to_string(r.n) + ',' +
         std::to_string(r.reps) + ',' + detail::format_real(r.mean_seconds) + ',' +
         detail::format_real(r.result_value);
}

inline std::string to_csv(const std::vector<BenchRecord>& records) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const BenchRecord& r : records) out += to_csv_row(r) + '\n';
  return out;
}

}  // namespace wsc
