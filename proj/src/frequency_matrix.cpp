#include "fmdp/frequency_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmdp {

namespace {

bool CoordLess(const Coord& a, const Coord& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void ValidateExtents(const std::vector<int64_t>& extents) {
  if (extents.empty()) throw std::invalid_argument("extents must be non-empty");
  for (int64_t e : extents) {
    if (e <= 0) throw std::invalid_argument("extents must be positive");
  }
}

}  // namespace

FrequencyMatrix::FrequencyMatrix(std::vector<int64_t> extents)
    : extents_(std::move(extents)) {
  ValidateExtents(extents_);
}

FrequencyMatrix FrequencyMatrix::FromPoints(
    const std::vector<Coord>& points, std::vector<int64_t> extents,
    const std::vector<int64_t>& weights) {
  ValidateExtents(extents);
  if (!weights.empty() && weights.size() != points.size()) {
    throw std::invalid_argument("weights must match points in length");
  }
  const size_t d = extents.size();
  std::vector<Entry> entries;
  entries.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    const Coord& c = points[i];
    if (c.size() != d) {
      std::ostringstream os;
      os << "point " << i << " has " << c.size() << " coordinates, expected "
         << d;
      throw std::invalid_argument(os.str());
    }
    for (size_t k = 0; k < d; ++k) {
      if (c[k] < 0 || c[k] >= extents[k]) {
        std::ostringstream os;
        os << "point " << i << " coordinate " << c[k] << " out of range [0,"
           << extents[k] << ") in dimension " << k;
        throw std::invalid_argument(os.str());
      }
    }
    int64_t w = weights.empty() ? 1 : weights[i];
    if (w <= 0) {
      std::ostringstream os;
      os << "point " << i << " has non-positive weight " << w;
      throw std::invalid_argument(os.str());
    }
    entries.push_back({c, w});
  }
  return FromEntries(std::move(entries), std::move(extents));
}

FrequencyMatrix FrequencyMatrix::FromEntries(std::vector<Entry> entries,
                                             std::vector<int64_t> extents) {
  ValidateExtents(extents);
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) {
              return CoordLess(a.coord, b.coord);
            });
  FrequencyMatrix m;
  m.extents_ = std::move(extents);
  m.entries_.reserve(entries.size());
  for (auto& e : entries) {
    const int64_t count = e.count;
    if (count <= 0) throw std::invalid_argument("counts must be positive");
    if (e.coord.size() != m.extents_.size() ||
        !m.Domain().Contains(e.coord)) {
      throw std::invalid_argument("entry coordinate out of range");
    }
    if (!m.entries_.empty() && m.entries_.back().coord == e.coord) {
      m.entries_.back().count += count;
    } else {
      m.entries_.push_back(std::move(e));
    }
    m.total_ += count;
  }
  return m;
}

int64_t FrequencyMatrix::At(const Coord& c) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), c,
                             [](const Entry& e, const Coord& key) {
                               return CoordLess(e.coord, key);
                             });
  if (it != entries_.end() && it->coord == c) return it->count;
  return 0;
}

int64_t FrequencyMatrix::RegionSum(const Region& r) const {
  if (!r.WithinExtents(extents_)) {
    throw std::invalid_argument("region " + r.ToString() +
                                " outside matrix extents");
  }
  int64_t sum = 0;
  for (const Entry& e : entries_) {
    if (r.Contains(e.coord)) sum += e.count;
  }
  return sum;
}

PartitionSet PartitionSet::Build(const FrequencyMatrix& m,
                                 std::vector<Region> regions) {
  PartitionSet p;
  p.regions = std::move(regions);
  p.counts.assign(p.regions.size(), 0);
  p.Validate(m.extents());
  // Assign every entry to the region containing it; the cover guarantees
  // exactly one match.
  for (const Entry& e : m.entries()) {
    for (size_t i = 0; i < p.regions.size(); ++i) {
      if (p.regions[i].Contains(e.coord)) {
        p.counts[i] += e.count;
        break;
      }
    }
  }
  int64_t sum = 0;
  for (int64_t c : p.counts) sum += c;
  if (sum != m.total()) {
    throw std::logic_error("partition counts do not conserve the total");
  }
  return p;
}

void PartitionSet::Validate(const std::vector<int64_t>& extents) const {
  int64_t volume_sum = 0;
  for (const Region& r : regions) {
    if (!r.WithinExtents(extents)) {
      throw std::invalid_argument("partition " + r.ToString() +
                                  " outside matrix extents");
    }
    volume_sum += r.Volume();
  }
  if (volume_sum != CheckedVolume(extents)) {
    throw std::invalid_argument("partition volumes do not cover the domain");
  }
  if (regions.size() <= kPairwiseCheckLimit) {
    for (size_t i = 0; i < regions.size(); ++i) {
      for (size_t j = i + 1; j < regions.size(); ++j) {
        if (regions[i].Intersects(regions[j])) {
          throw std::invalid_argument("partitions " + regions[i].ToString() +
                                      " and " + regions[j].ToString() +
                                      " overlap");
        }
      }
    }
  }
}

double Entropy(const std::vector<int64_t>& counts, bool* all_zero) {
  double sum = 0;
  for (int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("negative partition count");
    sum += static_cast<double>(c);
  }
  if (all_zero) *all_zero = (sum == 0);
  if (sum == 0) return 0.0;
  double h = 0;
  for (int64_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / sum;
    h -= p * std::log2(p);
  }
  return h < 0 ? 0.0 : h;
}

double Entropy(const PartitionSet& p, bool* all_zero) {
  return Entropy(p.counts, all_zero);
}

}  // namespace fmdp
