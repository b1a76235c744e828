#include "afst/sim/environment.hpp"

#include <cmath>
#include <stdexcept>

#include "afst/sim/kinematics.hpp"

namespace afst::sim {

namespace {

double dist_to(double x, double y, double gx, double gy) {
  return std::hypot(gx - x, gy - y);
}

}  // namespace

StepOutcome step(const WorldMap& world, const RobotSpec& robot, const smdp::Pose& pose,
                 double goal_x, double goal_y, const smdp::ExecutableAction& action,
                 const RewardParams& params, ExecMode mode,
                 const ObservationSpec& obs_spec) {
  if (disc_collides(world, pose.x, pose.y, robot.radius))
    throw std::logic_error("sim::step: commanded from an in-collision pose");

  const double exec_time =
      mode == ExecMode::Mode2 ? std::min(action.d, kMode2ControlInterval) : action.d;
  const double d_prev = dist_to(pose.x, pose.y, goal_x, goal_y);

  StepOutcome out;
  out.pose = pose;
  out.tau = 0.0;
  out.event = StepEvent::None;

  if (d_prev < params.arrive_radius) {
    // Episode spawned (or replanned) already inside the arrival radius.
    out.event = StepEvent::Arrived;
  } else {
    // Substep so the chord per substep is at most half a map cell; a
    // pure rotation cannot change the disc footprint, one substep does.
    const double chord = world.resolution / 2.0;
    const int n_sub =
        action.v > 0.0
            ? std::max(1, static_cast<int>(std::ceil(action.v * exec_time / chord)))
            : 1;
    const double h = exec_time / n_sub;
    smdp::Pose cur = pose;
    for (int i = 1; i <= n_sub; ++i) {
      const smdp::Pose next = propagate_arc(cur, action, h);
      if (disc_collides(world, next.x, next.y, robot.radius)) {
        // Contact charged to the start of the violating substep; the
        // robot keeps the last collision-free pose.
        out.event = StepEvent::Collided;
        out.tau = (i - 1) * h;
        break;
      }
      cur = next;
      out.tau = i * h;
      if (dist_to(cur.x, cur.y, goal_x, goal_y) < params.arrive_radius) {
        out.event = StepEvent::Arrived;
        break;
      }
    }
    out.pose = cur;
    if (out.event == StepEvent::None) out.tau = exec_time;
  }

  const double d_now = dist_to(out.pose.x, out.pose.y, goal_x, goal_y);
  out.reward = params.eps_a * (d_prev - d_now) - params.eps_t * out.tau -
               params.eps_tau * robot.limits.tau_tp;
  if (out.event == StepEvent::Arrived) out.reward += params.r_arr;
  if (out.event == StepEvent::Collided) out.reward += params.r_col;

  const auto scan =
      raycast_scan(world, out.pose, obs_spec.fov, obs_spec.beams, obs_spec.max_range);
  out.next_observation = build_observation(obs_spec, out.pose, goal_x, goal_y, scan);
  return out;
}

Observation Environment::reset(WorldMap world, const smdp::Pose& start, double goal_x,
                               double goal_y) {
  world_ = std::move(world);
  pose_ = start;
  goal_x_ = goal_x;
  goal_y_ = goal_y;
  decisions_ = 0;
  elapsed_ = 0.0;
  path_length_ = 0.0;
  if (disc_collides(world_, pose_.x, pose_.y, robot_.radius))
    throw std::logic_error("Environment::reset: start pose collides");
  const auto scan =
      raycast_scan(world_, pose_, obs_spec_.fov, obs_spec_.beams, obs_spec_.max_range);
  return build_observation(obs_spec_, pose_, goal_x_, goal_y_, scan);
}

StepOutcome Environment::step(const smdp::ExecutableAction& action) {
  StepOutcome out = sim::step(world_, robot_, pose_, goal_x_, goal_y_, action, params_,
                              mode_, obs_spec_);
  pose_ = out.pose;
  decisions_ += 1;
  elapsed_ += out.tau;
  path_length_ += action.v * out.tau;  // arc length of a constant-velocity arc
  return out;
}

}  // namespace afst::sim
