#ifndef FMDP_GRANULARITY_HPP
#define FMDP_GRANULARITY_HPP

#include <cstdint>
#include <optional>

namespace fmdp {

// EUG's empirical constant c0, chosen so that sqrt(2)*c0 = 10.
inline constexpr double kDefaultC0 = 7.0710678118654755;

struct GranularityConfig {
  double c0 = kDefaultC0;
  std::optional<double> selectivity;  // query fraction r in (0, 1]
  int dims = 2;                       // d
  double noisy_total = 0;             // sanitized total N
  double epsilon = 0;
};

struct FanoutResult {
  int64_t m = 1;          // rounded half-up, clamped to [1, max_m]
  double continuous = 1;  // the unrounded optimizer
  bool degenerate = false;  // non-positive noisy total fell back to m = 1
};

// Optimal uniform-grid fanout for a known query selectivity r:
//   m = ((2(d-1)/d) * r^(1/d - 1/2) * N*eps / (sqrt(2)*c0))^(2/(3d-2)).
// Requires d >= 2.
FanoutResult EugFanoutKnownR(const GranularityConfig& cfg,
                             std::optional<int64_t> max_m = std::nullopt);

// Fanout with selectivity integrated out:
//   m = alpha * d(3d-2)/(3d^2-3d+2),
//   alpha = ((2(d-1)/d) * N*eps/(sqrt(2)*c0))^(2/(3d-2)).
// Requires d >= 2. At d = 2 the correction factor is exactly 1.
FanoutResult EugFanoutIntegrated(const GranularityConfig& cfg,
                                 std::optional<int64_t> max_m = std::nullopt);

// Entropy-balance fanout  m = (N*eps/sqrt(2))^(2/(3d)). Valid for d >= 1;
// also used with residual dimensionality and residual budget inside the
// adaptive tree builders.
FanoutResult EbpFanout(double noisy_total, double epsilon, int dims,
                       std::optional<int64_t> max_m = std::nullopt);

enum class FanoutObjective { kEug, kEbp };

// Continuous optimizer found numerically; the independent oracle for the
// closed forms above. kEug minimizes the summed noise + non-uniformity
// error by golden-section search; kEbp locates the noise-entropy =
// information-loss balance point (the objective is the absolute imbalance,
// also unimodal). Search interval [lo, hi]; throws if no interior optimum
// can be bracketed.
double SolveFanoutNumeric(FanoutObjective objective,
                          const GranularityConfig& cfg, double lo = 1.0,
                          double hi = 1e6);

}  // namespace fmdp

#endif  // FMDP_GRANULARITY_HPP
