#include "fmdp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fmdp/io.hpp"

namespace fmdp {

SanitizeResult RunMethod(Method method, const FrequencyMatrix& m, double eps,
                         const MethodOptions& opts,
                         std::unique_ptr<DafNode>* tree_out) {
  switch (method) {
    case Method::kUniform: {
      SanitizeOptions o{opts.seed, opts.disable_noise};
      return SanitizeUniform(m, eps, o);
    }
    case Method::kIdentity: {
      SanitizeOptions o{opts.seed, opts.disable_noise};
      return SanitizeIdentity(m, eps, o, opts.cell_cap);
    }
    case Method::kEug:
    case Method::kEbp: {
      GridOptions o;
      o.seed = opts.seed;
      o.disable_noise = opts.disable_noise;
      o.eps0_fraction = opts.eps0_fraction;
      o.c0 = opts.c0;
      o.selectivity = opts.selectivity;
      return SanitizeGrid(m, eps, method, o);
    }
    case Method::kDafEntropy:
    case Method::kDafHomogeneity: {
      DafConfig cfg;
      cfg.eps_tot = eps;
      cfg.q = opts.q;
      cfg.candidate_sets = opts.candidate_sets;
      cfg.stop_multiplier = opts.stop_multiplier;
      cfg.seed = opts.seed;
      cfg.disable_noise = opts.disable_noise;
      DafResult daf = method == Method::kDafEntropy ? DafEntropy(m, cfg)
                                                    : DafHomogeneity(m, cfg);
      if (tree_out) *tree_out = std::move(daf.root);
      SanitizeResult res;
      res.matrix = std::move(daf.matrix);
      res.ledger = std::move(daf.ledger);
      res.seconds = daf.seconds;
      return res;
    }
  }
  throw std::invalid_argument("unknown method");
}

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = Trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

ExperimentPlan LoadPlan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file " + path);

  ExperimentPlan plan;
  plan.methods = {Method::kUniform,   Method::kIdentity,
                  Method::kEug,       Method::kEbp,
                  Method::kDafEntropy, Method::kDafHomogeneity};
  plan.epsilons = {0.1, 0.3, 0.5};

  std::string section;
  std::string section_arg;
  PlanDataset* dataset = nullptr;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      std::string inner = Trim(line.substr(1, line.size() - 2));
      const size_t sp = inner.find(' ');
      section = sp == std::string::npos ? inner : inner.substr(0, sp);
      section_arg = sp == std::string::npos ? "" : Trim(inner.substr(sp + 1));
      dataset = nullptr;
      if (section == "dataset") {
        if (section_arg.empty()) {
          throw ParseError(path, line_no, 0, "dataset section needs a name");
        }
        plan.datasets.push_back({section_arg, SyntheticSpec{}, ""});
        dataset = &plan.datasets.back();
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, line_no, 0, "expected key=value, got '" + line +
                                             "'");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    try {
      if (section == "dataset") {
        if (key == "file") {
          dataset->matrix_file = value;
          dataset->spec.reset();
          continue;
        }
        if (!dataset->spec) dataset->spec.emplace();
        SyntheticSpec& spec = *dataset->spec;
        if (key == "kind") {
          if (value == "gaussian") {
            spec.kind = SyntheticKind::kGaussian;
          } else if (value == "zipf") {
            spec.kind = SyntheticKind::kZipf;
          } else {
            throw std::invalid_argument("unknown kind " + value);
          }
        } else if (key == "d") {
          spec.dims = std::stoi(value);
        } else if (key == "n") {
          spec.n_points = std::stoll(value);
        } else if (key == "var") {
          spec.variance = std::stod(value);
        } else if (key == "a") {
          spec.zipf_a = std::stod(value);
        } else if (key == "seed") {
          spec.seed = std::stoull(value);
        } else if (key == "extents") {
          spec.extents.clear();
          for (const auto& tok : SplitList(value)) {
            spec.extents.push_back(std::stoll(tok));
          }
        } else {
          throw std::invalid_argument("unknown dataset key " + key);
        }
      } else if (section == "methods" && key == "list") {
        plan.methods.clear();
        for (const auto& tok : SplitList(value)) {
          plan.methods.push_back(ParseMethod(tok));
        }
      } else if (section == "epsilons" && key == "list") {
        plan.epsilons.clear();
        for (const auto& tok : SplitList(value)) {
          plan.epsilons.push_back(std::stod(tok));
        }
      } else if (section == "seeds" && key == "list") {
        plan.seeds.clear();
        for (const auto& tok : SplitList(value)) {
          plan.seeds.push_back(std::stoull(tok));
        }
      } else if (section == "workload") {
        if (key == "kind") {
          if (value == "random") {
            plan.workload.kind = WorkloadKind::kRandomShapeSize;
          } else if (value == "coverage") {
            plan.workload.kind = WorkloadKind::kFixedCoverage;
          } else {
            throw std::invalid_argument("unknown workload kind " + value);
          }
        } else if (key == "coverage") {
          plan.workload.coverage = std::stod(value);
        } else if (key == "count") {
          plan.workload.count = std::stoi(value);
        } else if (key == "seed") {
          plan.workload.seed = std::stoull(value);
        } else {
          throw std::invalid_argument("unknown workload key " + key);
        }
      } else if (section == "options") {
        if (key == "eps0_fraction") {
          plan.options.eps0_fraction = std::stod(value);
        } else if (key == "q") {
          plan.options.q = std::stod(value);
        } else if (key == "p") {
          plan.options.candidate_sets = std::stoi(value);
        } else if (key == "stop_multiplier") {
          plan.options.stop_multiplier = std::stod(value);
        } else if (key == "cell_cap") {
          plan.options.cell_cap = std::stoll(value);
        } else if (key == "c0") {
          plan.options.c0 = std::stod(value);
        } else if (key == "r") {
          plan.options.selectivity = std::stod(value);
        } else {
          throw std::invalid_argument("unknown options key " + key);
        }
      } else {
        throw std::invalid_argument("key '" + key + "' outside a known section");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(path, line_no, 0, e.what());
    }
  }
  if (plan.datasets.empty()) {
    throw std::runtime_error("plan has no datasets");
  }
  return plan;
}

std::vector<SweepRow> RunSweep(const ExperimentPlan& plan, int workers) {
  if (workers <= 0) {
    if (const char* env = std::getenv("FMDP_WORKERS")) {
      workers = std::atoi(env);
    }
  }
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
  }
  workers = std::max(workers, 1);

  // Datasets are materialized up front; cells then only read them.
  std::vector<FrequencyMatrix> matrices;
  matrices.reserve(plan.datasets.size());
  for (const PlanDataset& ds : plan.datasets) {
    matrices.push_back(ds.spec ? Generate(*ds.spec)
                               : ReadMatrix(ds.matrix_file));
  }
  std::vector<std::vector<RangeQuery>> workloads;
  workloads.reserve(matrices.size());
  for (const FrequencyMatrix& m : matrices) {
    workloads.push_back(GenerateWorkload(plan.workload, m.extents()));
  }

  struct Cell {
    size_t dataset;
    Method method;
    double eps;
  };
  std::vector<Cell> cells;
  for (size_t i = 0; i < plan.datasets.size(); ++i) {
    for (Method method : plan.methods) {
      for (double eps : plan.epsilons) {
        cells.push_back({i, method, eps});
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      const Cell& cell = cells[idx];
      const FrequencyMatrix& m = matrices[cell.dataset];
      SweepRow row;
      row.dataset = plan.datasets[cell.dataset].name;
      row.method = std::string(MethodName(cell.method));
      row.eps = cell.eps;
      row.dims = m.Dims();
      double time_sum = 0;
      try {
        for (uint64_t seed : plan.seeds) {
          MethodOptions opts = plan.options;
          opts.seed = seed;
          SanitizeResult res = RunMethod(cell.method, m, cell.eps, opts);
          res.ledger.AssertWithin();
          EvalSummary eval =
              Evaluate(res.matrix, m, workloads[cell.dataset]);
          row.per_seed_mre.push_back(eval.mean_mre);
          time_sum += res.seconds;
        }
        const size_t n = row.per_seed_mre.size();
        for (double v : row.per_seed_mre) row.mean_mre += v;
        row.mean_mre /= static_cast<double>(n);
        if (n > 1) {
          double ss = 0;
          for (double v : row.per_seed_mre) {
            ss += (v - row.mean_mre) * (v - row.mean_mre);
          }
          row.std_mre = std::sqrt(ss / static_cast<double>(n - 1));
        }
        row.mean_seconds = time_sum / static_cast<double>(plan.seeds.size());
      } catch (const InfeasibleError& e) {
        row.status = std::string("skipped: ") + e.what();
        row.per_seed_mre.clear();
        row.mean_mre = row.std_mre = row.mean_seconds = 0;
      } catch (const std::exception& e) {
        row.status = std::string("failed: ") + e.what();
        row.per_seed_mre.clear();
        row.mean_mre = row.std_mre = row.mean_seconds = 0;
      }
      rows[idx] = std::move(row);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(workers, static_cast<int>(cells.size()));
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow>& rows,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "dataset,method,epsilon,d,mean_mre,std_mre,mean_seconds,seeds,"
         "status\n";
  for (const SweepRow& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << r.dataset << "," << r.method << "," << FormatDouble(r.eps) << ","
        << r.dims << "," << FormatDouble(r.mean_mre) << ","
        << FormatDouble(r.std_mre) << "," << FormatDouble(r.mean_seconds)
        << "," << r.per_seed_mre.size() << "," << status << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fmdp
