#include "fmdp/region.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace fmdp {

namespace {

int64_t MulChecked(int64_t a, int64_t b) {
  if (a != 0 && b > std::numeric_limits<int64_t>::max() / a) {
    throw std::overflow_error("region volume exceeds int64 range");
  }
  return a * b;
}

}  // namespace

Region::Region(std::vector<Interval> bounds) : bounds_(std::move(bounds)) {
  for (size_t i = 0; i < bounds_.size(); ++i) {
    if (bounds_[i].lo >= bounds_[i].hi) {
      std::ostringstream os;
      os << "empty interval [" << bounds_[i].lo << "," << bounds_[i].hi
         << ") in dimension " << i;
      throw std::invalid_argument(os.str());
    }
  }
}

Region Region::FullDomain(const std::vector<int64_t>& extents) {
  std::vector<Interval> bounds;
  bounds.reserve(extents.size());
  for (int64_t e : extents) {
    if (e <= 0) throw std::invalid_argument("extents must be positive");
    bounds.push_back({0, e});
  }
  return Region(std::move(bounds));
}

int64_t Region::Volume() const {
  int64_t v = 1;
  for (const Interval& b : bounds_) v = MulChecked(v, b.Width());
  return v;
}

bool Region::Contains(const Coord& c) const {
  if (c.size() != bounds_.size()) return false;
  for (size_t i = 0; i < bounds_.size(); ++i) {
    if (!bounds_[i].Contains(c[i])) return false;
  }
  return true;
}

bool Region::ContainsRegion(const Region& other) const {
  if (other.Dims() != Dims()) return false;
  for (size_t i = 0; i < bounds_.size(); ++i) {
    if (other.bounds_[i].lo < bounds_[i].lo ||
        other.bounds_[i].hi > bounds_[i].hi) {
      return false;
    }
  }
  return true;
}

bool Region::Intersects(const Region& other) const {
  for (size_t i = 0; i < bounds_.size(); ++i) {
    if (other.bounds_[i].hi <= bounds_[i].lo ||
        other.bounds_[i].lo >= bounds_[i].hi) {
      return false;
    }
  }
  return true;
}

int64_t Region::IntersectionVolume(const Region& other) const {
  int64_t v = 1;
  for (size_t i = 0; i < bounds_.size(); ++i) {
    int64_t lo = std::max(bounds_[i].lo, other.bounds_[i].lo);
    int64_t hi = std::min(bounds_[i].hi, other.bounds_[i].hi);
    if (lo >= hi) return 0;
    v = MulChecked(v, hi - lo);
  }
  return v;
}

bool Region::WithinExtents(const std::vector<int64_t>& extents) const {
  if (bounds_.size() != extents.size()) return false;
  for (size_t i = 0; i < bounds_.size(); ++i) {
    if (bounds_[i].lo < 0 || bounds_[i].hi > extents[i]) return false;
  }
  return true;
}

std::vector<Region> Region::SplitDim(int dim, int64_t parts) const {
  if (parts < 1) throw std::invalid_argument("split fanout must be >= 1");
  const Interval& iv = bounds_[dim];
  const int64_t w = iv.Width();
  if (parts > w) parts = w;  // never produce empty intervals
  std::vector<Region> out;
  out.reserve(parts);
  for (int64_t j = 0; j < parts; ++j) {
    int64_t lo = iv.lo + (j * w) / parts;
    int64_t hi = iv.lo + ((j + 1) * w) / parts;
    out.push_back(WithBound(dim, {lo, hi}));
  }
  return out;
}

Region Region::WithBound(int dim, Interval iv) const {
  std::vector<Interval> bounds = bounds_;
  bounds[dim] = iv;
  return Region(std::move(bounds));
}

std::string Region::ToString() const {
  std::ostringstream os;
  for (size_t i = 0; i < bounds_.size(); ++i) {
    if (i) os << "x";
    os << "[" << bounds_[i].lo << "," << bounds_[i].hi << ")";
  }
  return os.str();
}

int64_t SplitBucket(const Interval& iv, int64_t parts, int64_t x) {
  const int64_t w = iv.Width();
  if (parts > w) parts = w;
  // Largest j with lo + floor(j*w/parts) <= x.
  return ((x - iv.lo + 1) * parts - 1) / w;
}

int64_t CheckedVolume(const std::vector<int64_t>& extents) {
  int64_t v = 1;
  for (int64_t e : extents) v = MulChecked(v, e);
  return v;
}

}  // namespace fmdp
