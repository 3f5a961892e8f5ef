#include "fmdp/sanitized_matrix.hpp"

#include <stdexcept>

namespace fmdp {

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kUniform:
      return "uniform";
    case Method::kIdentity:
      return "identity";
    case Method::kEug:
      return "eug";
    case Method::kEbp:
      return "ebp";
    case Method::kDafEntropy:
      return "daf-entropy";
    case Method::kDafHomogeneity:
      return "daf-homogeneity";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  if (name == "uniform") return Method::kUniform;
  if (name == "identity") return Method::kIdentity;
  if (name == "eug") return Method::kEug;
  if (name == "ebp") return Method::kEbp;
  if (name == "daf-entropy") return Method::kDafEntropy;
  if (name == "daf-homogeneity") return Method::kDafHomogeneity;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

void SanitizedMatrix::AddMeta(std::string key, std::string value) {
  meta.emplace_back(std::move(key), std::move(value));
}

const std::string* SanitizedMatrix::FindMeta(std::string_view key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return &v;
  }
  return nullptr;
}

double SanitizeCount(int64_t true_count, double sensitivity, double epsilon,
                     NoiseStream& stream, BudgetLedger& ledger,
                     const std::string& label, const ScopePath& scope,
                     bool noise_disabled, int64_t multiplicity) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (sensitivity <= 0) {
    throw std::invalid_argument("sensitivity must be > 0");
  }
  if (!ledger.CanAbsorb(epsilon, scope)) {
    throw BudgetOverflowError("cannot absorb epsilon for '" + label + "' (" +
                              ledger.Summary() + ")\n" + ledger.Dump());
  }
  const double draw = stream.NextLaplace(sensitivity / epsilon);
  ledger.Charge(label, epsilon, scope, multiplicity);
  return static_cast<double>(true_count) + (noise_disabled ? 0.0 : draw);
}

}  // namespace fmdp
