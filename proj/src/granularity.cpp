#include "fmdp/granularity.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace fmdp {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int64_t RoundClamp(double continuous, std::optional<int64_t> max_m) {
  double r = std::floor(continuous + 0.5);  // round half up
  int64_t m = r < 1 ? 1 : static_cast<int64_t>(r);
  if (max_m && m > *max_m) m = *max_m;
  if (m < 1) m = 1;
  return m;
}

void ValidateCommon(const GranularityConfig& cfg, int min_dims) {
  if (cfg.dims < min_dims) {
    throw std::invalid_argument("dimension count must be >= " +
                                std::to_string(min_dims));
  }
  if (cfg.c0 <= 0) throw std::invalid_argument("c0 must be > 0");
  if (cfg.epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
}

// Noise + non-uniformity error of a uniform m^d grid for query fraction r.
double EugObjective(double m, const GranularityConfig& cfg) {
  const double d = cfg.dims;
  const double r = cfg.selectivity.value_or(1.0);
  const double noise =
      std::sqrt(2.0 * r) * std::pow(m, d / 2.0) / cfg.epsilon;
  const double uniformity = std::pow(r, 1.0 / d) * cfg.noisy_total /
                            (cfg.c0 * std::pow(m, d - 1.0));
  return noise + uniformity;
}

// Signed noise-entropy minus information-loss imbalance; zero at the EBP
// balance point.
double EbpImbalance(double m, const GranularityConfig& cfg) {
  const double d = cfg.dims;
  return (3.0 * d / 2.0) * std::log2(m) -
         std::log2(cfg.noisy_total * cfg.epsilon / kSqrt2);
}

double GoldenSection(double lo, double hi,
                     const std::function<double(double)>& f) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (std::abs(a) + std::abs(b));
       ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

FanoutResult EugFanoutKnownR(const GranularityConfig& cfg,
                             std::optional<int64_t> max_m) {
  ValidateCommon(cfg, 2);
  if (!cfg.selectivity) {
    throw std::invalid_argument("EUG known-r form requires a selectivity");
  }
  const double r = *cfg.selectivity;
  if (!(r > 0 && r <= 1)) {
    throw std::invalid_argument("selectivity must be in (0,1]");
  }
  if (cfg.noisy_total <= 0) {
    return {1, 1.0, true};
  }
  const double d = cfg.dims;
  const double base = (2.0 * (d - 1.0) / d) * std::pow(r, 1.0 / d - 0.5) *
                      cfg.noisy_total * cfg.epsilon / (kSqrt2 * cfg.c0);
  const double cont = std::pow(base, 2.0 / (3.0 * d - 2.0));
  return {RoundClamp(cont, max_m), cont, false};
}

FanoutResult EugFanoutIntegrated(const GranularityConfig& cfg,
                                 std::optional<int64_t> max_m) {
  ValidateCommon(cfg, 2);
  if (cfg.noisy_total <= 0) {
    return {1, 1.0, true};
  }
  const double d = cfg.dims;
  const double base = (2.0 * (d - 1.0) / d) * cfg.noisy_total * cfg.epsilon /
                      (kSqrt2 * cfg.c0);
  const double alpha = std::pow(base, 2.0 / (3.0 * d - 2.0));
  const double factor = d * (3.0 * d - 2.0) / (3.0 * d * d - 3.0 * d + 2.0);
  const double cont = alpha * factor;
  return {RoundClamp(cont, max_m), cont, false};
}

FanoutResult EbpFanout(double noisy_total, double epsilon, int dims,
                       std::optional<int64_t> max_m) {
  if (dims < 1) throw std::invalid_argument("dimension count must be >= 1");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (noisy_total <= 0) {
    return {1, 1.0, true};
  }
  const double cont =
      std::pow(noisy_total * epsilon / kSqrt2, 2.0 / (3.0 * dims));
  return {RoundClamp(cont, max_m), cont, false};
}

double SolveFanoutNumeric(FanoutObjective objective,
                          const GranularityConfig& cfg, double lo, double hi) {
  ValidateCommon(cfg, objective == FanoutObjective::kEug ? 2 : 1);
  if (cfg.noisy_total <= 0) {
    throw std::invalid_argument("numeric solve needs a positive noisy total");
  }
  if (!(lo > 0 && lo < hi)) {
    throw std::invalid_argument("invalid search interval");
  }
  std::function<double(double)> f;
  if (objective == FanoutObjective::kEug) {
    f = [&cfg](double m) { return EugObjective(m, cfg); };
  } else {
    f = [&cfg](double m) { return std::abs(EbpImbalance(m, cfg)); };
  }
  // Unimodality check: the minimum must not sit hard against a bracket edge
  // unless the function is monotone into it.
  const double m_star = GoldenSection(lo, hi, f);
  if (m_star > hi * (1 - 1e-9) && f(hi) < f(hi * (1 - 1e-6))) {
    throw std::runtime_error(
        "no interior optimum in bracket (objective still decreasing at hi)");
  }
  return m_star;
}

}  // namespace fmdp
