#pragma once

#include <optional>
#include <string>

#include "afst/sim/trajectory.hpp"
#include "afst/sim/world.hpp"

namespace afst::eval {

struct RenderOptions {
  int scale = 6;  // pixels per map cell
  std::optional<smdp::Pose> start;                     // green box
  std::optional<std::pair<double, double>> goal;       // blue box
};

// Writes a raster of the world with the driven path in yellow, one dot
// per planning decision, and optional start/goal boxes. Drawing is
// unantialiased so output bytes are deterministic.
void render_trajectory(const sim::WorldMap& world, const sim::Trajectory& rows,
                       const std::string& out_path,
                       const RenderOptions& options = {});

}  // namespace afst::eval
