#include "fmdp/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fmdp/io.hpp"

namespace fmdp {

namespace {

// Linear binning of v in [lo, hi] onto {0..cells-1}; the closed upper edge
// folds into the last cell.
int64_t BinOf(double v, double lo, double hi, int64_t cells) {
  const double t = (v - lo) / (hi - lo);
  int64_t bin = static_cast<int64_t>(std::floor(t * static_cast<double>(cells)));
  if (bin == cells && v <= hi) bin = cells - 1;
  return bin;
}

}  // namespace

FrequencyMatrix BuildOdMatrix(const std::vector<std::vector<double>>& rows,
                              const TrajectorySchema& schema,
                              IngestReport* report) {
  if (schema.stops < 2) throw std::invalid_argument("stops must be >= 2");
  if (schema.grid_x <= 0 || schema.grid_y <= 0) {
    throw std::invalid_argument("grid extents must be positive");
  }
  const BoundingBox& box = schema.box;
  if (!(box.lat_min < box.lat_max && box.lon_min < box.lon_max)) {
    throw std::invalid_argument("bounding box is empty");
  }
  const int d = 2 * schema.stops;
  std::vector<int64_t> extents(d);
  for (int s = 0; s < schema.stops; ++s) {
    extents[2 * s] = schema.grid_x;
    extents[2 * s + 1] = schema.grid_y;
  }

  IngestReport local;
  std::vector<Coord> points;
  points.reserve(rows.size());
  Coord c(d);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != d) {
      ++local.skipped_malformed;
      continue;
    }
    bool inside = true;
    for (int s = 0; s < schema.stops && inside; ++s) {
      const double lat = row[2 * s];
      const double lon = row[2 * s + 1];
      if (lat < box.lat_min || lat > box.lat_max || lon < box.lon_min ||
          lon > box.lon_max || !std::isfinite(lat) || !std::isfinite(lon)) {
        inside = false;
        break;
      }
      c[2 * s] = BinOf(lat, box.lat_min, box.lat_max, schema.grid_x);
      c[2 * s + 1] = BinOf(lon, box.lon_min, box.lon_max, schema.grid_y);
    }
    if (!inside) {
      ++local.skipped_out_of_box;
      continue;
    }
    points.push_back(c);
    ++local.accepted;
  }
  if (report) *report = local;
  if (local.accepted == 0 && !rows.empty()) {
    throw std::runtime_error("all trajectory rows were skipped");
  }
  return FrequencyMatrix::FromPoints(points, extents);
}

FrequencyMatrix IngestTrajectoryCsv(const std::string& path,
                                    const TrajectorySchema& schema,
                                    IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const int d = 2 * schema.stops;

  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path, 1, 0, "missing header");
  }
  int fields = line.empty() ? 0 : 1;
  for (char ch : line) {
    if (ch == ',') ++fields;
  }
  if (fields != d) {
    std::ostringstream os;
    os << "header has " << fields << " fields, expected " << d
       << " (lat1,lon1,...,lat" << schema.stops << ",lon" << schema.stops
       << ")";
    throw ParseError(path, 1, 0, os.str());
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    row.clear();
    std::stringstream ss(line);
    std::string tok;
    bool ok = true;
    while (std::getline(ss, tok, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) ok = false;
      } catch (const std::exception&) {
        ok = false;
        break;
      }
    }
    rows.push_back(ok ? row : std::vector<double>{});  // empty -> malformed
  }
  return BuildOdMatrix(rows, schema, report);
}

}  // namespace fmdp
