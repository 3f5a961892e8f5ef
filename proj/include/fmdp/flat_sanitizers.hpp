#ifndef FMDP_FLAT_SANITIZERS_HPP
#define FMDP_FLAT_SANITIZERS_HPP

#include <cstdint>
#include <optional>

#include "fmdp/frequency_matrix.hpp"
#include "fmdp/granularity.hpp"
#include "fmdp/sanitized_matrix.hpp"

namespace fmdp {

inline constexpr int64_t kDefaultCellCap = 100'000'000;

// Single partition covering the whole domain; only the total count is
// sanitized.
SanitizeResult SanitizeUniform(const FrequencyMatrix& m, double eps,
                               const SanitizeOptions& opts = {});

// One partition per cell, zero cells included, so the domain volume is
// capped. All cells share one parallel composition scope. Throws
// InfeasibleError above the cap; per-cell enumeration of a high-d OD
// matrix is intentionally infeasible.
SanitizeResult SanitizeIdentity(const FrequencyMatrix& m, double eps,
                                const SanitizeOptions& opts = {},
                                int64_t cell_cap = kDefaultCellCap);

struct GridOptions : SanitizeOptions {
  double eps0_fraction = 0.01;  // share of eps_tot spent on the total count
  double c0 = kDefaultC0;
  std::optional<double> selectivity;  // EUG only; unset -> integrated form
};

// Uniform-grid sanitizer: sanitizes the total with eps0, derives the
// fanout m from the provider (Method::kEug or Method::kEbp) and the
// remaining budget, splits every dimension into min(m, extent) equal
// intervals, and sanitizes each partition's count with the full remaining
// budget (one parallel scope across the disjoint partitions).
SanitizeResult SanitizeGrid(const FrequencyMatrix& m, double eps_tot,
                            Method provider, const GridOptions& opts = {});

}  // namespace fmdp

#endif  // FMDP_FLAT_SANITIZERS_HPP
