// wsc: count weighted subgraph occurrences from the command line.
//
// Exit codes:
//   0  success
//   1  verify found a disagreement
//   2  bad input file (unreadable, malformed, invalid weights)
//   3  bad pattern (unknown id, malformed literal, unsupported size)
//   4  size cap exceeded (oracle)
//   5  bad flags or benchmark configuration

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsc/wsc.hpp"

namespace {

using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kMismatch = 1,
  kBadInput = 2,
  kBadPattern = 3,
  kCapExceeded = 4,
  kBadConfig = 5,
};

int exit_for(const wsc::Error& e) {
  switch (e.code()) {
    case wsc::ErrorCode::kTooLarge: return kCapExceeded;
    case wsc::ErrorCode::kConfigError: return kBadConfig;
    default: return kBadPattern;
  }
}

struct CountOptions {
  std::string graph_path;
  std::string pattern;
  wsc::Method method = wsc::Method::kAuto;
  wsc::GraphFormat format = wsc::GraphFormat::kAuto;
  bool explain = false;
  bool json = false;
};

int cmd_count(const CountOptions& opt) {
  wsc::WeightedGraph g = [&] {
    try {
      return wsc::load_graph(opt.graph_path, opt.format);
    } catch (const wsc::Error& e) {
      std::cerr << "wsc: " << opt.graph_path << ": " << e.what() << '\n';
      std::exit(kBadInput);
    }
  }();

  wsc::CountResult r;
  wsc::EvaluationPlan plan;
  try {
    const bool breakdown = opt.explain && opt.method == wsc::Method::kEngine;
    r = wsc::count_spec(opt.pattern, g, opt.method, {}, breakdown);
    if (opt.explain) plan = wsc::build_plan(wsc::parse_pattern(opt.pattern));
  } catch (const wsc::Error& e) {
    std::cerr << "wsc: " << e.what() << '\n';
    return exit_for(e);
  }

  if (opt.json) {
    json out = {{"pattern", r.pattern}, {"labeled", r.labeled}, {"unlabeled", r.unlabeled},
                {"method", r.method},   {"n", r.n}};
    if (opt.explain) {
      json terms = json::array();
      for (std::size_t i = 0; i < plan.terms.size(); ++i) {
        const wsc::PlanTerm& t = plan.terms[i];
        json term = {{"coefficient", t.coefficient},
                     {"signature", t.partition.signature_string()},
                     {"contracted", t.contracted.as_pattern().to_literal()}};
        if (i < r.terms.size()) term["value"] = r.terms[i].value;
        terms.push_back(std::move(term));
      }
      out["plan"] = std::move(terms);
    }
    std::cout << out.dump() << '\n';
    return kOk;
  }

  std::cout << "pattern\t" << r.pattern << '\n'
            << "method\t" << r.method << '\n'
            << "n\t" << r.n << '\n'
            << "labeled\t" << wsc::detail::format_real(r.labeled) << '\n'
            << "unlabeled\t" << wsc::detail::format_real(r.unlabeled) << '\n';
  if (opt.explain) {
    std::cout << "# plan: coefficient, block sizes, contracted pattern";
    if (!r.terms.empty()) std::cout << ", value";
    std::cout << '\n';
    for (std::size_t i = 0; i < plan.terms.size(); ++i) {
      const wsc::PlanTerm& t = plan.terms[i];
      std::cout << t.coefficient << '\t' << t.partition.signature_string() << '\t'
                << t.contracted.as_pattern().to_literal();
      if (i < r.terms.size()) std::cout << '\t' << wsc::detail::format_real(r.terms[i].value);
      std::cout << '\n';
    }
  }
  return kOk;
}

struct VerifyOptions {
  std::vector<std::size_t> sizes{8};
  int seeds = 20;
  std::uint64_t first_seed = 0;
  double tolerance = 1e-9;
};

int cmd_verify(const VerifyOptions& opt) {
  std::vector<std::uint64_t> seeds;
  for (int s = 0; s < opt.seeds; ++s) seeds.push_back(opt.first_seed + static_cast<std::uint64_t>(s));
  wsc::VerifyReport report;
  try {
    report = wsc::verify_catalog(opt.sizes, seeds, opt.tolerance);
  } catch (const wsc::Error& e) {
    std::cerr << "wsc: " << e.what() << '\n';
    return exit_for(e);
  }
  for (const wsc::VerifyMismatch& m : report.mismatches) {
    std::cout << "MISMATCH " << m.id << " n=" << m.n << " seed=" << m.seed
              << " closed=" << wsc::detail::format_real(m.closed)
              << " engine=" << wsc::detail::format_real(m.engine)
              << " oracle=" << wsc::detail::format_real(m.oracle) << '\n';
    for (const wsc::TermValue& t : m.terms) {
      std::cout << "  " << t.coefficient << '\t' << t.signature << '\t' << t.contracted << '\t'
                << wsc::detail::format_real(t.value) << '\n';
    }
  }
  std::cout << report.checks << " comparisons, " << report.mismatches.size() << " mismatches\n";
  return report.ok() ? kOk : kMismatch;
}

struct BenchOptions {
  wsc::BenchConfig config;
  std::string jsonl_path;
};

int cmd_bench(BenchOptions opt) {
  if (opt.config.ids.empty()) {
    for (const wsc::CatalogEntry& e : wsc::list_patterns()) opt.config.ids.push_back(e.id);
  }
  if (opt.config.sizes.empty()) opt.config.sizes = {20};
  std::vector<wsc::BenchRecord> records;
  try {
    records = wsc::run_bench(opt.config);
  } catch (const wsc::Error& e) {
    std::cerr << "wsc: " << e.what() << '\n';
    return exit_for(e);
  }
  std::cerr << "# rng " << wsc::kRngAlgorithm << " seed " << opt.config.seed << '\n';
  std::cout << wsc::to_csv(records);
  if (!opt.jsonl_path.empty()) {
    std::ofstream out(opt.jsonl_path);
    if (!out) {
      std::cerr << "wsc: cannot write " << opt.jsonl_path << '\n';
      return kBadConfig;
    }
    for (const wsc::BenchRecord& r : records) {
      out << json{{"pattern_id", r.pattern_id},     {"method", wsc::to_string(r.method)},
                  {"n", r.n},                       {"reps", r.reps},
                  {"mean_seconds", r.mean_seconds}, {"result_value", r.result_value}}
                 .dump()
          << '\n';
    }
  }
  return kOk;
}

int cmd_list_patterns() {
  for (const wsc::CatalogEntry& e : wsc::list_patterns()) {
    std::cout << e.id << '\t' << e.pattern.vertex_count() << '\t' << e.pattern.edge_string() << '\t'
              << e.aut_count << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts of edge-weighted subgraph occurrences"};
  app.require_subcommand(1);

  const std::map<std::string, wsc::Method> methods{{"auto", wsc::Method::kAuto},
                                                   {"closed", wsc::Method::kClosed},
                                                   {"engine", wsc::Method::kEngine},
                                                   {"oracle", wsc::Method::kOracle}};
  const std::map<std::string, wsc::GraphFormat> formats{{"auto", wsc::GraphFormat::kAuto},
                                                        {"matrix", wsc::GraphFormat::kMatrix},
                                                        {"edgelist", wsc::GraphFormat::kEdgeList}};

  CountOptions count_opt;
  CLI::App* count = app.add_subcommand("count", "Count one pattern in a graph file");
  count->add_option("graph", count_opt.graph_path, "Dense matrix or edge list file")->required();
  count->add_option("pattern", count_opt.pattern, "Catalog id, alias, or literal such as \"3: 1-2, 2-3\"")
      ->required();
  std::string method_name = "auto";
  std::string format_name = "auto";
  count->add_option("--method", method_name, "closed, engine, oracle or auto")
      ->check(CLI::IsMember(methods, CLI::ignore_case));
  count->add_option("--format", format_name, "matrix, edgelist or auto")
      ->check(CLI::IsMember(formats, CLI::ignore_case));
  count->add_flag("--explain", count_opt.explain, "Print the evaluation plan");
  count->add_flag("--json", count_opt.json, "Print one JSON object");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "Check closed forms and engine against the oracle");
  verify->add_option("--sizes", verify_opt.sizes, "Graph sizes")->delimiter(',');
  verify->add_option("--seeds", verify_opt.seeds, "Number of seeds per size")->check(CLI::PositiveNumber);
  verify->add_option("--first-seed", verify_opt.first_seed, "First seed");
  verify->add_option("--tol", verify_opt.tolerance, "Relative tolerance");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "Time closed forms against the engine and nested loops");
  bench->add_option("--ids", bench_opt.config.ids, "Catalog ids (default: all)")->delimiter(',');
  bench->add_option("--sizes", bench_opt.config.sizes, "Graph sizes (default: 20)")->delimiter(',');
  bench->add_option("--reps", bench_opt.config.reps, "Timed repetitions");
  bench->add_option("--seed", bench_opt.config.seed, "Graph seed");
  bench->add_option("--jsonl", bench_opt.jsonl_path, "Also write records as JSON lines");
  bool no_engine = false;
  bool no_naive = false;
  bench->add_flag("--no-engine", no_engine, "Skip the engine");
  bench->add_flag("--no-naive", no_naive, "Skip the nested-loop baseline");

  CLI::App* list = app.add_subcommand("list-patterns", "Print the catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  if (count->parsed()) {
    count_opt.method = methods.at(CLI::detail::to_lower(method_name));
    count_opt.format = formats.at(CLI::detail::to_lower(format_name));
    return cmd_count(count_opt);
  }
  if (verify->parsed()) return cmd_verify(verify_opt);
  if (bench->parsed()) {
    bench_opt.config.include_engine = !no_engine;
    bench_opt.config.include_naive = !no_naive;
    return cmd_bench(bench_opt);
  }
  if (list->parsed()) return cmd_list_patterns();
  return kBadConfig;
}
