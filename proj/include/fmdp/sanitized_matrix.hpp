#ifndef FMDP_SANITIZED_MATRIX_HPP
#define FMDP_SANITIZED_MATRIX_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fmdp/budget_ledger.hpp"
#include "fmdp/frequency_matrix.hpp"
#include "fmdp/noise.hpp"
#include "fmdp/region.hpp"

namespace fmdp {

enum class Method {
  kUniform,
  kIdentity,
  kEug,
  kEbp,
  kDafEntropy,
  kDafHomogeneity,
};

std::string_view MethodName(Method m);
Method ParseMethod(std::string_view name);

// Thrown when a method cannot run on the given input (e.g. IDENTITY over
// its cell cap). Distinct from hard failures so harnesses can skip.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SanitizedPartition {
  Region region;
  double noisy_count = 0;
  int64_t volume = 0;
};

// The published artifact: disjoint regions covering the domain, each with
// a real-valued noisy count, plus provenance metadata. Noisy counts are
// never clamped or post-processed.
struct SanitizedMatrix {
  std::vector<int64_t> extents;
  std::vector<SanitizedPartition> partitions;

  Method method = Method::kUniform;
  double epsilon = 0;
  uint64_t seed = 0;
  bool noise_disabled = false;
  // Free-form provenance, preserved in file order.
  std::vector<std::pair<std::string, std::string>> meta;

  void AddMeta(std::string key, std::string value);
  const std::string* FindMeta(std::string_view key) const;
  int Dims() const { return static_cast<int>(extents.size()); }
};

struct SanitizeOptions {
  uint64_t seed = 0;
  // Test hook: publishes true counts (noise suppressed). Budget is charged
  // exactly as in a normal run so the audit stays meaningful. Output is
  // marked non-private in the metadata.
  bool disable_noise = false;
};

struct SanitizeResult {
  SanitizedMatrix matrix;
  BudgetLedger ledger{0};
  double seconds = 0;
};

// Laplace mechanism for one count: true_count + Lap(sensitivity/epsilon)
// using the next draw of `stream`, recording (label, epsilon) in the
// ledger under `scope`. Rejects epsilon <= 0 and budget overflows (with a
// ledger dump). Negative outputs are retained as-is.
double SanitizeCount(int64_t true_count, double sensitivity, double epsilon,
                     NoiseStream& stream, BudgetLedger& ledger,
                     const std::string& label, const ScopePath& scope,
                     bool noise_disabled = false, int64_t multiplicity = 1);

}  // namespace fmdp

#endif  // FMDP_SANITIZED_MATRIX_HPP
