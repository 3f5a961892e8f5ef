#ifndef FMDP_TRAJECTORY_HPP
#define FMDP_TRAJECTORY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fmdp/frequency_matrix.hpp"

namespace fmdp {

struct BoundingBox {
  double lat_min = 0;
  double lat_max = 0;
  double lon_min = 0;
  double lon_max = 0;
};

// Layout of trajectory rows: `stops` recorded (lat, lon) points each
// (2 = classic origin-destination, 3+ adds intermediate stops), mapped onto
// a grid_x x grid_y grid per stop by linear binning of the bounding box.
// The resulting matrix has 2*stops dimensions.
struct TrajectorySchema {
  int stops = 2;
  int64_t grid_x = 1000;
  int64_t grid_y = 1000;
  BoundingBox box;
};

struct IngestReport {
  int64_t accepted = 0;
  int64_t skipped_out_of_box = 0;
  int64_t skipped_malformed = 0;
};

// Each row holds 2*stops doubles (lat1,lon1,...). Rows with a point outside
// the bounding box or the wrong arity are skipped and counted. Throws if
// every row was skipped.
FrequencyMatrix BuildOdMatrix(const std::vector<std::vector<double>>& rows,
                              const TrajectorySchema& schema,
                              IngestReport* report = nullptr);

// Reads a trajectory CSV with header lat1,lon1,...,latS,lonS and one row
// per trajectory.
FrequencyMatrix IngestTrajectoryCsv(const std::string& path,
                                    const TrajectorySchema& schema,
                                    IngestReport* report = nullptr);

}  // namespace fmdp

#endif  // FMDP_TRAJECTORY_HPP
