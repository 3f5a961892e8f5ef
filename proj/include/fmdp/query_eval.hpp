#ifndef FMDP_QUERY_EVAL_HPP
#define FMDP_QUERY_EVAL_HPP

#include <cstdint>
#include <vector>

#include "fmdp/frequency_matrix.hpp"
#include "fmdp/sanitized_matrix.hpp"

namespace fmdp {

struct RangeQuery {
  Region region;
};

enum class WorkloadKind { kRandomShapeSize, kFixedCoverage };

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::kRandomShapeSize;
  double coverage = 0;  // fraction of each dimension's extent; kFixedCoverage
  int count = 1000;
  uint64_t seed = 0;
};

// Range-query answer under the uniformity assumption: each partition
// contributes noisy_count * |P intersect q| / |P|. Intersection volumes are
// exact integers; the fraction is converted to floating point once per
// partition.
double Answer(const SanitizedMatrix& sm, const RangeQuery& q);

int64_t TrueAnswer(const FrequencyMatrix& m, const RangeQuery& q);

// Relative error in percent: |p - noisy| / max(p, floor) * 100. The floor
// keeps empty queries well-defined.
double Mre(double true_count, double noisy_answer, double floor = 1.0);

// Deterministic under seed. kRandomShapeSize draws each dimension's
// endpoints uniformly (lo < hi); kFixedCoverage uses width
// ceil(coverage * extent), clamped to at least 1, uniformly placed.
std::vector<RangeQuery> GenerateWorkload(const WorkloadSpec& spec,
                                         const std::vector<int64_t>& extents);

struct QueryRecord {
  int id = 0;
  double truth = 0;
  double noisy = 0;
  double mre = 0;
};

struct EvalSummary {
  double mean_mre = 0;
  double median_mre = 0;
  std::vector<QueryRecord> records;
};

// Evaluates a workload against the sanitized matrix and the ground truth.
// For domains small enough to materialize (see kSatVolumeLimit) answers are
// computed through per-cell prefix sums, which is algebraically identical
// to Answer() per partition; larger domains fall back to per-query
// partition scans.
EvalSummary Evaluate(const SanitizedMatrix& sm, const FrequencyMatrix& m,
                     const std::vector<RangeQuery>& workload,
                     double mre_floor = 1.0);

inline constexpr int64_t kSatVolumeLimit = 8'000'000;

}  // namespace fmdp

#endif  // FMDP_QUERY_EVAL_HPP
