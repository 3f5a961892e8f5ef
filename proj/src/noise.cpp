#include "fmdp/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace fmdp {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer: a bijective 64-bit mix.
uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

double LaplaceInvCdf(double u, double scale) {
  if (scale <= 0) throw std::invalid_argument("laplace scale must be > 0");
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("laplace inverse CDF needs u in (0,1)");
  }
  const double t = u - 0.5;
  if (t == 0.0) return 0.0;
  const double sign = t > 0 ? 1.0 : -1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(t));
}

double LaplaceCdf(double x, double scale) {
  if (scale <= 0) throw std::invalid_argument("laplace scale must be > 0");
  if (x < 0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

NoiseStream::NoiseStream(uint64_t seed)
    : seed_(seed), key_(Mix64(seed + kGolden)) {}

NoiseStream::NoiseStream(uint64_t seed, uint64_t key,
                         std::vector<uint64_t> path)
    : seed_(seed), key_(key), path_(std::move(path)) {}

NoiseStream NoiseStream::Child(uint64_t element) const {
  std::vector<uint64_t> path = path_;
  path.push_back(element);
  uint64_t key = Mix64(key_ ^ (kGolden * (element + 1)));
  return NoiseStream(seed_, key, std::move(path));
}

uint64_t NoiseStream::NextU64() {
  return Mix64(key_ + kGolden * ++counter_);
}

double NoiseStream::NextUniform() {
  // 53-bit mantissa shifted into the open interval (0,1).
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseStream::NextLaplace(double scale) {
  return LaplaceInvCdf(NextUniform(), scale);
}

double NoiseStream::NextGaussian() {
  const double u1 = NextUniform();
  const double u2 = NextUniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

int64_t NoiseStream::NextInt(int64_t lo, int64_t hi) {
  if (lo >= hi) throw std::invalid_argument("NextInt needs lo < hi");
  const uint64_t range = static_cast<uint64_t>(hi - lo);
  return lo + static_cast<int64_t>(NextU64() % range);
}

}  // namespace fmdp
