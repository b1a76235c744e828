#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "afst/sim/world.hpp"
#include "afst/smdp/types.hpp"

namespace afst::eval {

enum class Family { Sparse, Dense, Spiral, Zigzag, Hybrid, Image };

const char* to_string(Family f);
Family family_from(const std::string& name);

struct Region {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

// Declarative description of a benchmark world family. Random families
// (sparse/dense/hybrid) draw obstacles and start/goal per seed; spiral
// and zigzag are fixed authored layouts; image worlds come from a
// grayscale file with poses in the sidecar.
struct ScenarioSpec {
  Family family = Family::Sparse;
  double extent_x = 10.0, extent_y = 10.0;
  double resolution = 0.05;

  int n_obstacles = 6;           // boxes/discs of size in [size_lo, size_hi]
  double size_lo = 0.5, size_hi = 2.0;
  int n_walls = 0;               // elongated rectangles (hybrid family)
  double wall_len_lo = 1.5, wall_len_hi = 3.5;
  double wall_thickness = 0.15;

  Region start_region, goal_region;      // empty: whole interior
  double min_separation = 1.0;           // start-to-goal, meters
  double spawn_clearance = 0.1;          // extra margin around the robot disc

  std::optional<smdp::Pose> fixed_start;
  std::optional<std::pair<double, double>> fixed_goal;
  std::string image_path;                // family = image only

  static ScenarioSpec preset(const std::string& name);  // family name or "smoke"
};

void to_json(nlohmann::json& j, const ScenarioSpec& spec);
void from_json(const nlohmann::json& j, ScenarioSpec& spec);
ScenarioSpec load_scenario_spec(const std::string& path);
void save_scenario_spec(const ScenarioSpec& spec, const std::string& path);

struct Scenario {
  sim::WorldMap world;
  smdp::Pose start;
  double goal_x = 0.0, goal_y = 0.0;
};

// True if a robot of the given radius can reach the goal cell from the
// start cell (4-connected flood fill over collision-free cell centers).
bool path_exists(const sim::WorldMap& world, double radius, double sx, double sy,
                 double gx, double gy);

// Deterministic per (spec, seed). Postconditions: start and goal discs
// are collision-free with spawn clearance, separated by at least
// min_separation, and connected per path_exists. Throws after a bounded
// number of placement retries.
Scenario generate_scenario(const ScenarioSpec& spec, double robot_radius,
                           std::uint64_t seed);

// The authored fixed worlds, exposed for tooling (image export, tests).
sim::WorldMap spiral_world(double resolution = 0.05);
sim::WorldMap zigzag_world(double resolution = 0.05);

}  // namespace afst::eval
