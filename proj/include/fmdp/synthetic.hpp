#ifndef FMDP_SYNTHETIC_HPP
#define FMDP_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "fmdp/frequency_matrix.hpp"

namespace fmdp {

enum class SyntheticKind { kGaussian, kZipf };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::kGaussian;
  int dims = 2;
  int64_t n_points = 1'000'000;
  // Empty -> floor(n_points^(1/d)) cells per dimension.
  std::vector<int64_t> extents;
  double variance = 2500;  // Gaussian; lower = more skewed
  double zipf_a = 1.5;     // Zipf skew; must be > 1
  uint64_t seed = 0;
};

std::vector<int64_t> DefaultExtents(int dims, int64_t n_points);

// Cluster center drawn uniformly per dimension, then points sampled from
// N(center, variance) per coordinate, rounded to the nearest integer.
// Out-of-range points are discarded and redrawn; pathological acceptance
// (below ~1e-3) is rejected with diagnostics. Deterministic under seed.
FrequencyMatrix GenGaussian(const SyntheticSpec& spec);

// Each coordinate drawn independently from a Zipf law over {1..extent},
// truncated and renormalized, mapped to 0-based cells. Requires a > 1.
FrequencyMatrix GenZipf(const SyntheticSpec& spec);

FrequencyMatrix Generate(const SyntheticSpec& spec);

}  // namespace fmdp

#endif  // FMDP_SYNTHETIC_HPP
