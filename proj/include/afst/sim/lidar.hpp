#pragma once

#include <vector>

#include "afst/sim/observation.hpp"
#include "afst/sim/world.hpp"
#include "afst/smdp/types.hpp"

namespace afst::sim {

// Distance along a single ray from (x, y) in direction angle to the
// first occupied cell (grid traversal, exact cell-entry distance),
// capped at max_range. Leaving the raster counts as hitting an obstacle.
double raycast(const WorldMap& world, double x, double y, double angle,
               double max_range);

// n_beams ranges evenly spaced across fov centered on the pose heading.
std::vector<double> raycast_scan(const WorldMap& world, const smdp::Pose& pose,
                                 double fov, int n_beams, double max_range);

// Builds the egocentric observation from a scan taken at pose: free
// space along each beam ray is carved out, endpoints below max_range are
// marked occupied, and cells no beam observed stay occupied (unknown is
// treated as obstacle). goal_rel is the goal in the robot frame
// (x forward, y left).
Observation build_observation(const ObservationSpec& spec, const smdp::Pose& pose,
                              double goal_x, double goal_y,
                              const std::vector<double>& scan);

}  // namespace afst::sim
