#pragma once

#include <cmath>
#include <vector>

namespace afst::sim {

// Egocentric observation: a square occupancy grid centered on the robot
// (x forward, y left) plus the goal position in the robot frame.
// Grid cells are 1 for occupied-or-unknown and 0 for observed-free.
struct Observation {
  std::vector<float> local_map;  // cells*cells, row-major over (iy, ix)
  int cells = 0;                 // grid side length
  float extent = 0.0f;           // covered side length in meters
  float goal_x = 0.0f;           // goal in robot frame, meters
  float goal_y = 0.0f;

  int size() const { return cells * cells; }

  float& at(int ix, int iy) { return local_map[iy * cells + ix]; }
  float at(int ix, int iy) const { return local_map[iy * cells + ix]; }
};

// Static description of the observation pipeline; fixed for a whole run.
struct ObservationSpec {
  int cells = 120;            // local grid side length
  double extent = 6.0;        // meters covered by the local grid
  int beams = 181;            // lidar beam count
  double fov = M_PI;          // field of view, radians (forward centered)
  double max_range = 3.0;     // lidar sensing radius, meters
};

}  // namespace afst::sim
