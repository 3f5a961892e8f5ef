#ifndef FMDP_NOISE_HPP
#define FMDP_NOISE_HPP

#include <cstdint>
#include <vector>

namespace fmdp {

// Inverse CDF of the Laplace(0, scale) distribution evaluated at u in (0,1).
// u = 0.5 maps to exactly 0.
double LaplaceInvCdf(double u, double scale);

// Laplace CDF at x for Laplace(0, scale).
double LaplaceCdf(double x, double scale);

// Deterministic counter-based random stream keyed by (seed, path). Streams
// with distinct (seed, path) are statistically independent; identical keys
// reproduce identical draws. Results are therefore independent of traversal
// or scheduling order: every consuming site derives its own child stream.
class NoiseStream {
 public:
  explicit NoiseStream(uint64_t seed);

  // Derives the sub-stream for one path element. Does not advance this
  // stream's counter.
  NoiseStream Child(uint64_t element) const;

  uint64_t NextU64();
  // Uniform draw in the open interval (0, 1).
  double NextUniform();
  // One Laplace(0, scale) draw via inverse CDF. Rejects scale <= 0.
  double NextLaplace(double scale);
  // Standard normal draw (Box-Muller).
  double NextGaussian();
  // Uniform integer in [lo, hi); requires lo < hi.
  int64_t NextInt(int64_t lo, int64_t hi);

  uint64_t seed() const { return seed_; }
  const std::vector<uint64_t>& path() const { return path_; }

 private:
  NoiseStream(uint64_t seed, uint64_t key, std::vector<uint64_t> path);

  uint64_t seed_ = 0;
  uint64_t key_ = 0;
  uint64_t counter_ = 0;
  std::vector<uint64_t> path_;
};

}  // namespace fmdp

#endif  // FMDP_NOISE_HPP
