#ifndef FMDP_BENCH_HPP
#define FMDP_BENCH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fmdp/daf.hpp"
#include "fmdp/flat_sanitizers.hpp"
#include "fmdp/query_eval.hpp"
#include "fmdp/sanitized_matrix.hpp"
#include "fmdp/synthetic.hpp"

namespace fmdp {

// Per-method knobs bundled for dispatch through one entry point.
struct MethodOptions {
  uint64_t seed = 0;
  bool disable_noise = false;
  // grid
  double eps0_fraction = 0.01;
  double c0 = kDefaultC0;
  std::optional<double> selectivity;
  int64_t cell_cap = kDefaultCellCap;
  // daf
  double q = 0.3;
  int candidate_sets = 8;
  double stop_multiplier = 2.0;
};

// Runs the named sanitizer. For the DAF methods `tree_out`, when non-null,
// receives the built tree.
SanitizeResult RunMethod(Method method, const FrequencyMatrix& m, double eps,
                         const MethodOptions& opts,
                         std::unique_ptr<DafNode>* tree_out = nullptr);

struct PlanDataset {
  std::string name;
  // Exactly one of the two is used: a synthetic spec or a COO matrix file.
  std::optional<SyntheticSpec> spec;
  std::string matrix_file;
};

// Full evaluation grid: dataset x method x epsilon, each cell averaged
// over the sanitization seeds against one fixed workload.
struct ExperimentPlan {
  std::vector<PlanDataset> datasets;
  std::vector<Method> methods;
  std::vector<double> epsilons;
  WorkloadSpec workload;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  MethodOptions options;
};

// Plan file: key=value lines under [dataset <name>], [methods], [epsilons],
// [workload], [seeds] and [options] sections.
ExperimentPlan LoadPlan(const std::string& path);

struct SweepRow {
  std::string dataset;
  std::string method;
  double eps = 0;
  int dims = 0;
  double mean_mre = 0;
  double std_mre = 0;
  double mean_seconds = 0;
  std::vector<double> per_seed_mre;  // one value per completed seed
  std::string status = "ok";         // ok | skipped | failed: <reason>
};

// Executes the plan. Cells run in a worker pool of `workers` threads
// (0 -> FMDP_WORKERS env or hardware concurrency); every cell is a pure
// function of (dataset, method, eps, seed) so parallelism never changes
// results. Partial failures are recorded per row and the sweep continues.
std::vector<SweepRow> RunSweep(const ExperimentPlan& plan, int workers = 0);

// Aggregate CSV, one row per plan cell:
// dataset,method,epsilon,d,mean_mre,std_mre,mean_seconds,seeds,status
void WriteSweepCsv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace fmdp

#endif  // FMDP_BENCH_HPP
