#pragma once

#include <optional>
#include <vector>

#include "afst/sim/lidar.hpp"
#include "afst/sim/world.hpp"
#include "afst/smdp/types.hpp"

namespace afst::sim {

// Coefficients of the four-component reward plus the arrival radius.
struct RewardParams {
  double r_arr = 500.0;       // arrival bonus
  double r_col = -500.0;      // collision penalty
  double eps_a = 200.0;       // approach coefficient
  double eps_t = 12.0;        // time-cost coefficient
  double eps_tau = 10.0;      // per-action coefficient (applied to tau_tp)
  double arrive_radius = 0.3; // meters
};

enum class StepEvent { None, Arrived, Collided };

inline const char* to_string(StepEvent e) {
  switch (e) {
    case StepEvent::None: return "none";
    case StepEvent::Arrived: return "arrived";
    case StepEvent::Collided: return "collided";
  }
  return "?";
}

// Mode1 executes each action for its full planned duration; Mode2
// replans every control interval (0.1 s) while keeping the planned FST.
enum class ExecMode { Mode1, Mode2 };

constexpr double kMode2ControlInterval = 0.1;

struct StepOutcome {
  smdp::Pose pose;        // robot pose after the (possibly truncated) motion
  Observation next_observation;
  double reward = 0.0;
  double tau = 0.0;       // seconds actually executed
  StepEvent event = StepEvent::None;
};

// One transition of the SMDP dynamics: advance along the commanded arc
// in substeps (chord per substep <= half the map resolution), stopping
// at the first contact or on entering the arrival radius. Commanding
// from an in-collision pose is a contract violation.
StepOutcome step(const WorldMap& world, const RobotSpec& robot, const smdp::Pose& pose,
                 double goal_x, double goal_y, const smdp::ExecutableAction& action,
                 const RewardParams& params, ExecMode mode,
                 const ObservationSpec& obs_spec);

// Episode-owning wrapper used by rollout workers and evaluation: holds
// the world, pose, goal and decision bookkeeping for one robot.
class Environment {
 public:
  Environment(RobotSpec robot, RewardParams params, ObservationSpec obs_spec,
              ExecMode mode = ExecMode::Mode1)
      : robot_(robot), params_(params), obs_spec_(obs_spec), mode_(mode) {}

  // Installs a world and starts a fresh episode. The start pose must be
  // collision-free.
  Observation reset(WorldMap world, const smdp::Pose& start, double goal_x, double goal_y);

  StepOutcome step(const smdp::ExecutableAction& action);

  const WorldMap& world() const { return world_; }
  const RobotSpec& robot() const { return robot_; }
  const RewardParams& reward_params() const { return params_; }
  const ObservationSpec& observation_spec() const { return obs_spec_; }
  const smdp::Pose& pose() const { return pose_; }
  double goal_x() const { return goal_x_; }
  double goal_y() const { return goal_y_; }
  int decisions() const { return decisions_; }
  double elapsed_seconds() const { return elapsed_; }
  double path_length() const { return path_length_; }
  ExecMode mode() const { return mode_; }

 private:
  WorldMap world_;
  RobotSpec robot_;
  RewardParams params_;
  ObservationSpec obs_spec_;
  ExecMode mode_;
  smdp::Pose pose_;
  double goal_x_ = 0.0, goal_y_ = 0.0;
  int decisions_ = 0;
  double elapsed_ = 0.0;
  double path_length_ = 0.0;
};

}  // namespace afst::sim
