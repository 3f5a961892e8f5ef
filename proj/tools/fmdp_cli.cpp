// Command-line front end: synthetic data generation, trajectory ingestion,
// sanitization, query evaluation and full experiment sweeps.
//
// Exit codes: 0 ok, 2 usage error, 3 budget audit failure, 4 infeasible
// method skip, 1 other errors.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmdp/bench.hpp"
#include "fmdp/daf.hpp"
#include "fmdp/flat_sanitizers.hpp"
#include "fmdp/io.hpp"
#include "fmdp/query_eval.hpp"
#include "fmdp/synthetic.hpp"
#include "fmdp/trajectory.hpp"

namespace {

using nlohmann::json;

std::string Timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Accepts "key=value" lines; flags given on the command line win.
void ApplyConfigFile(const std::string& path,
                     std::map<std::string, std::string>& kv) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv.emplace(line.substr(0, eq), line.substr(eq + 1));
  }
}

int CmdGenerate(const std::string& kind, int dims, int64_t n, double var,
                double zipf_a, const std::vector<int64_t>& extents,
                uint64_t seed, const std::string& config,
                const std::string& output) {
  std::map<std::string, std::string> kv;
  if (!config.empty()) ApplyConfigFile(config, kv);

  fmdp::SyntheticSpec spec;
  spec.kind = kind == "zipf" ? fmdp::SyntheticKind::kZipf
                             : fmdp::SyntheticKind::kGaussian;
  spec.dims = dims;
  spec.n_points = n;
  spec.variance = var;
  spec.zipf_a = zipf_a;
  spec.extents = extents;
  spec.seed = seed;
  if (auto it = kv.find("kind"); it != kv.end()) {
    spec.kind = it->second == "zipf" ? fmdp::SyntheticKind::kZipf
                                     : fmdp::SyntheticKind::kGaussian;
  }
  if (auto it = kv.find("d"); it != kv.end()) spec.dims = std::stoi(it->second);
  if (auto it = kv.find("n"); it != kv.end()) {
    spec.n_points = std::stoll(it->second);
  }
  if (auto it = kv.find("var"); it != kv.end()) {
    spec.variance = std::stod(it->second);
  }
  if (auto it = kv.find("a"); it != kv.end()) {
    spec.zipf_a = std::stod(it->second);
  }
  if (auto it = kv.find("seed"); it != kv.end()) {
    spec.seed = std::stoull(it->second);
  }

  const fmdp::FrequencyMatrix m = fmdp::Generate(spec);
  fmdp::WriteMatrix(m, output);

  json sidecar;
  sidecar["kind"] = spec.kind == fmdp::SyntheticKind::kZipf ? "zipf"
                                                            : "gaussian";
  sidecar["d"] = spec.dims;
  sidecar["n"] = spec.n_points;
  sidecar["extents"] = m.extents();
  if (spec.kind == fmdp::SyntheticKind::kGaussian) {
    sidecar["var"] = spec.variance;
  } else {
    sidecar["a"] = spec.zipf_a;
  }
  sidecar["seed"] = spec.seed;
  sidecar["total"] = m.total();
  sidecar["nonzero_cells"] = m.NonZeroCells();
  std::ofstream side(output + ".json");
  side << sidecar.dump(2) << "\n";

  std::cout << "wrote " << output << " (total " << m.total() << ", "
            << m.NonZeroCells() << " non-zero cells)\n";
  return 0;
}

int CmdSanitize(const std::string& input, const std::string& method_name,
                double eps, const fmdp::MethodOptions& opts,
                const std::string& output, const std::string& ledger_out,
                const std::string& tree_out, bool tree_debug) {
  const fmdp::Method method = fmdp::ParseMethod(method_name);
  const fmdp::FrequencyMatrix m = fmdp::ReadMatrix(input);

  std::unique_ptr<fmdp::DafNode> tree;
  fmdp::SanitizeResult res =
      fmdp::RunMethod(method, m, eps, opts, tree_out.empty() ? nullptr : &tree);

  // Last-line safety check; unreachable in a correct build.
  try {
    res.ledger.AssertWithin();
  } catch (const fmdp::BudgetOverflowError& e) {
    std::cerr << "budget audit failed, refusing to write output\n"
              << e.what() << "\n";
    return 3;
  }

  res.matrix.AddMeta("runtime_s", fmdp::FormatDouble(res.seconds));
  res.matrix.AddMeta("timestamp", Timestamp());
  fmdp::WriteSanitized(res.matrix, output);
  if (!ledger_out.empty()) {
    fmdp::WriteTextFile(res.ledger.Dump(), ledger_out);
  }
  if (!tree_out.empty()) {
    if (!tree) {
      std::cerr << "--tree-out is only available for daf methods\n";
      return 2;
    }
    if (tree_debug) {
      std::cerr << "warning: debug tree dump includes true counts and is not "
                   "private\n";
    }
    fmdp::WriteTextFile(fmdp::DumpTree(*tree, tree_debug), tree_out);
  }
  std::cout << "wrote " << output << " (" << res.matrix.partitions.size()
            << " partitions, " << res.ledger.Summary() << ", "
            << fmdp::FormatDouble(res.seconds) << "s)\n";
  return 0;
}

int CmdEvaluate(const std::string& matrix_file, const std::string& san_file,
                const std::string& workload_kind, int count, double pct,
                uint64_t seed, const std::string& output,
                const std::string& summary_out) {
  const fmdp::FrequencyMatrix m = fmdp::ReadMatrix(matrix_file);
  const fmdp::SanitizedMatrix sm = fmdp::ReadSanitized(san_file);
  if (sm.extents != m.extents()) {
    throw std::runtime_error(
        "extents mismatch between matrix and sanitized file");
  }

  fmdp::WorkloadSpec spec;
  if (workload_kind == "random") {
    spec.kind = fmdp::WorkloadKind::kRandomShapeSize;
  } else if (workload_kind == "coverage") {
    spec.kind = fmdp::WorkloadKind::kFixedCoverage;
    spec.coverage = pct / 100.0;
  } else {
    throw CLI::ValidationError("--workload must be random or coverage");
  }
  spec.count = count;
  spec.seed = seed;

  const auto workload = fmdp::GenerateWorkload(spec, m.extents());
  const fmdp::EvalSummary eval = fmdp::Evaluate(sm, m, workload);

  if (!output.empty()) fmdp::WriteQueryRecords(eval.records, output);
  if (!summary_out.empty()) {
    fmdp::SummaryRow row;
    row.method = std::string(fmdp::MethodName(sm.method));
    row.eps = sm.epsilon;
    row.dims = m.Dims();
    row.dataset = matrix_file;
    row.mean_mre = eval.mean_mre;
    row.median_mre = eval.median_mre;
    row.seed = seed;
    fmdp::WriteSummary({row}, summary_out);
  }
  std::cout << "mean_mre=" << fmdp::FormatDouble(eval.mean_mre)
            << " median_mre=" << fmdp::FormatDouble(eval.median_mre) << " ("
            << eval.records.size() << " queries)\n";
  return 0;
}

int CmdSweep(const std::string& plan_file, const std::string& output,
             int workers) {
  const fmdp::ExperimentPlan plan = fmdp::LoadPlan(plan_file);
  const auto rows = fmdp::RunSweep(plan, workers);
  fmdp::WriteSweepCsv(rows, output);
  int failures = 0;
  for (const auto& row : rows) {
    if (row.status.rfind("failed", 0) == 0) ++failures;
  }
  std::cout << "wrote " << output << " (" << rows.size() << " rows, "
            << failures << " failed)\n";
  return 0;
}

int CmdIngest(const std::string& input, int stops, int64_t grid_x,
              int64_t grid_y, const std::vector<double>& bbox,
              const std::string& output) {
  fmdp::TrajectorySchema schema;
  schema.stops = stops;
  schema.grid_x = grid_x;
  schema.grid_y = grid_y;
  schema.box = {bbox[0], bbox[1], bbox[2], bbox[3]};
  fmdp::IngestReport report;
  const fmdp::FrequencyMatrix m =
      fmdp::IngestTrajectoryCsv(input, schema, &report);
  fmdp::WriteMatrix(m, output);
  std::cout << "wrote " << output << " (accepted " << report.accepted
            << ", out-of-box " << report.skipped_out_of_box << ", malformed "
            << report.skipped_malformed << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private publication of d-dimensional "
               "frequency matrices (origin-destination matrices with "
               "intermediate stops), with a benchmark harness"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic matrix");
  std::string gen_kind = "gaussian";
  int gen_d = 0;
  int64_t gen_n = 1'000'000;
  double gen_var = 2500, gen_a = 1.5;
  std::vector<int64_t> gen_extents;
  uint64_t gen_seed = 0;
  std::string gen_config, gen_out;
  gen->add_option("--kind", gen_kind, "gaussian or zipf")
      ->check(CLI::IsMember({"gaussian", "zipf"}));
  auto* gen_d_opt = gen->add_option("--d", gen_d, "dimension count");
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--var", gen_var, "gaussian variance");
  gen->add_option("--a", gen_a, "zipf skew (> 1)");
  gen->add_option("--extents", gen_extents,
                  "cells per dimension, comma separated (default: "
                  "floor(n^(1/d)))")
      ->delimiter(',');
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--config", gen_config, "key=value spec file");
  gen->add_option("-o,--output", gen_out, "output COO matrix file")
      ->required();

  // sanitize
  auto* san = app.add_subcommand("sanitize", "Sanitize a matrix file");
  std::string san_in, san_method, san_out, san_ledger, san_tree;
  double san_eps = 0.1;
  fmdp::MethodOptions san_opts;
  bool san_no_noise = false, san_tree_debug = false;
  double san_r = -1;
  san->add_option("input", san_in, "COO matrix file")->required();
  san->add_option("--method", san_method,
                  "uniform|identity|eug|ebp|daf-entropy|daf-homogeneity")
      ->required();
  san->add_option("--eps", san_eps, "total privacy budget")->required();
  san->add_option("--seed", san_opts.seed, "noise seed");
  san->add_option("--eps0-frac", san_opts.eps0_fraction,
                  "grid share of budget for the total count");
  san->add_option("--c0", san_opts.c0, "EUG constant c0");
  san->add_option("--r", san_r, "EUG known query selectivity in (0,1]");
  san->add_option("--q", san_opts.q, "daf partitioning budget ratio");
  san->add_option("--p", san_opts.candidate_sets, "daf candidate set count");
  san->add_option("--stop-mult", san_opts.stop_multiplier,
                  "daf stop-condition multiplier (0 disables)");
  san->add_option("--cell-cap", san_opts.cell_cap,
                  "identity per-cell enumeration cap");
  san->add_flag("--no-noise", san_no_noise,
                "suppress noise (test oracle; output is not private)");
  san->add_option("-o,--output", san_out, "sanitized output file")->required();
  san->add_option("--ledger-out", san_ledger, "budget ledger dump file");
  san->add_option("--tree-out", san_tree, "daf tree dump file");
  san->add_flag("--tree-debug", san_tree_debug,
                "include true counts in the tree dump (not private)");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Run a query workload");
  std::string ev_matrix, ev_san, ev_workload = "random", ev_out, ev_summary;
  int ev_count = 1000;
  double ev_pct = 1.0;
  uint64_t ev_seed = 0;
  ev->add_option("matrix", ev_matrix, "COO matrix file")->required();
  ev->add_option("sanitized", ev_san, "sanitized matrix file")->required();
  ev->add_option("--workload", ev_workload, "random or coverage")
      ->check(CLI::IsMember({"random", "coverage"}));
  ev->add_option("--count", ev_count, "number of queries");
  ev->add_option("--pct", ev_pct, "coverage percent of each dimension side");
  ev->add_option("--seed", ev_seed, "workload seed");
  ev->add_option("-o,--output", ev_out, "per-query CSV");
  ev->add_option("--summary", ev_summary, "summary CSV");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run an experiment plan");
  std::string sw_plan, sw_out = "sweep.csv";
  int sw_workers = 0;
  sw->add_option("plan", sw_plan, "plan file")->required();
  sw->add_option("-o,--output", sw_out, "aggregate CSV");
  sw->add_option("--workers", sw_workers,
                 "worker threads (default: FMDP_WORKERS or all cores)");

  // ingest
  auto* ing = app.add_subcommand("ingest",
                                 "Build an OD matrix from trajectory CSV");
  std::string ing_in, ing_out;
  int ing_stops = 2;
  int64_t ing_gx = 1000, ing_gy = 1000;
  std::vector<double> ing_bbox;
  ing->add_option("input", ing_in, "trajectory CSV")->required();
  ing->add_option("--stops", ing_stops, "recorded points per trajectory");
  ing->add_option("--grid-x", ing_gx, "cells along latitude");
  ing->add_option("--grid-y", ing_gy, "cells along longitude");
  ing->add_option("--bbox", ing_bbox,
                  "lat_min lat_max lon_min lon_max")
      ->expected(4)
      ->required();
  ing->add_option("-o,--output", ing_out, "output COO matrix file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      if (gen_config.empty() && gen_d_opt->count() == 0) {
        std::cerr << "generate: --d is required (or provide --config)\n";
        return 2;
      }
      return CmdGenerate(gen_kind, gen_d, gen_n, gen_var, gen_a, gen_extents,
                         gen_seed, gen_config, gen_out);
    }
    if (san->parsed()) {
      san_opts.disable_noise = san_no_noise;
      if (san_r > 0) san_opts.selectivity = san_r;
      return CmdSanitize(san_in, san_method, san_eps, san_opts, san_out,
                         san_ledger, san_tree, san_tree_debug);
    }
    if (ev->parsed()) {
      return CmdEvaluate(ev_matrix, ev_san, ev_workload, ev_count, ev_pct,
                         ev_seed, ev_out, ev_summary);
    }
    if (sw->parsed()) {
      return CmdSweep(sw_plan, sw_out, sw_workers);
    }
    if (ing->parsed()) {
      return CmdIngest(ing_in, ing_stops, ing_gx, ing_gy, ing_bbox, ing_out);
    }
  } catch (const fmdp::InfeasibleError& e) {
    std::cerr << "skipped: " << e.what() << "\n";
    return 4;
  } catch (const fmdp::BudgetOverflowError& e) {
    std::cerr << "budget audit failure: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
