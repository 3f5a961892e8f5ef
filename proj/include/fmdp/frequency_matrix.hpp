#ifndef FMDP_FREQUENCY_MATRIX_HPP
#define FMDP_FREQUENCY_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "fmdp/region.hpp"

namespace fmdp {

// One non-zero cell of a sparse frequency matrix.
struct Entry {
  Coord coord;
  int64_t count = 0;
};

// Sparse d-dimensional matrix of non-negative integer counts. Zero cells
// are not stored. Immutable after construction; all operations run in time
// proportional to the number of non-zero cells, never the domain volume.
class FrequencyMatrix {
 public:
  FrequencyMatrix() = default;
  explicit FrequencyMatrix(std::vector<int64_t> extents);

  // Accumulates weighted points. Weights default to 1 and must be positive.
  // Rejects out-of-range coordinates naming the offending point and
  // dimension.
  static FrequencyMatrix FromPoints(const std::vector<Coord>& points,
                                    std::vector<int64_t> extents,
                                    const std::vector<int64_t>& weights = {});

  // Builds from pre-aggregated entries (duplicates are merged). Used by
  // file readers.
  static FrequencyMatrix FromEntries(std::vector<Entry> entries,
                                     std::vector<int64_t> extents);

  int Dims() const { return static_cast<int>(extents_.size()); }
  const std::vector<int64_t>& extents() const { return extents_; }
  int64_t total() const { return total_; }
  int64_t NonZeroCells() const { return static_cast<int64_t>(entries_.size()); }

  // Entries sorted lexicographically by coordinate (row-major order).
  const std::vector<Entry>& entries() const { return entries_; }

  int64_t At(const Coord& c) const;

  // Exact sum of counts inside r. Rejects regions outside the extents.
  int64_t RegionSum(const Region& r) const;

  Region Domain() const { return Region::FullDomain(extents_); }
  int64_t Volume() const { return CheckedVolume(extents_); }

 private:
  std::vector<int64_t> extents_;
  std::vector<Entry> entries_;
  int64_t total_ = 0;
};

// Disjoint regions covering the full matrix domain, with their true counts.
struct PartitionSet {
  std::vector<Region> regions;
  std::vector<int64_t> counts;

  // Computes counts and validates the disjoint-cover invariant.
  static PartitionSet Build(const FrequencyMatrix& m,
                            std::vector<Region> regions);

  // Checks: every region within extents, volumes sum to the domain volume,
  // and pairwise disjointness (the quadratic check is skipped above
  // kPairwiseCheckLimit regions; the volume identity still holds).
  void Validate(const std::vector<int64_t>& extents) const;

  static constexpr size_t kPairwiseCheckLimit = 4096;
};

// Shannon entropy in bits of the count distribution, with 0*log(0) = 0.
// An all-zero input is defined as 0 bits; *all_zero is set when provided.
double Entropy(const std::vector<int64_t>& counts, bool* all_zero = nullptr);
double Entropy(const PartitionSet& p, bool* all_zero = nullptr);

}  // namespace fmdp

#endif  // FMDP_FREQUENCY_MATRIX_HPP
