#ifndef FMDP_REGION_HPP
#define FMDP_REGION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fmdp {

// A cell coordinate in a d-dimensional frequency matrix.
using Coord = std::vector<int64_t>;

// Half-open integer interval [lo, hi).
struct Interval {
  int64_t lo = 0;
  int64_t hi = 0;

  int64_t Width() const { return hi - lo; }
  bool Contains(int64_t x) const { return x >= lo && x < hi; }
  bool operator==(const Interval&) const = default;
};

// Axis-aligned d-orthotope of half-open integer intervals. Invariant:
// lo < hi in every dimension.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Interval> bounds);

  static Region FullDomain(const std::vector<int64_t>& extents);

  int Dims() const { return static_cast<int>(bounds_.size()); }
  const Interval& Bound(int dim) const { return bounds_[dim]; }
  const std::vector<Interval>& bounds() const { return bounds_; }

  // Number of cells covered. Throws std::overflow_error if the product
  // does not fit in int64.
  int64_t Volume() const;

  bool Contains(const Coord& c) const;
  bool ContainsRegion(const Region& other) const;
  bool Intersects(const Region& other) const;
  int64_t IntersectionVolume(const Region& other) const;
  bool WithinExtents(const std::vector<int64_t>& extents) const;

  // Splits dimension `dim` into `parts` equal-width intervals with floor
  // boundaries lo + floor(j*w/parts). `parts` is clamped to the interval
  // width; parts < 1 is rejected. The result is disjoint and covers this
  // region.
  std::vector<Region> SplitDim(int dim, int64_t parts) const;

  // Replaces the interval of one dimension.
  Region WithBound(int dim, Interval iv) const;

  std::string ToString() const;
  bool operator==(const Region&) const = default;

 private:
  std::vector<Interval> bounds_;
};

// Index of the sub-interval of SplitDim(dim, parts) that contains x.
int64_t SplitBucket(const Interval& iv, int64_t parts, int64_t x);

int64_t CheckedVolume(const std::vector<int64_t>& extents);

}  // namespace fmdp

#endif  // FMDP_REGION_HPP
