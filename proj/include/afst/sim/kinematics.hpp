#pragma once

#include <cmath>

#include "afst/smdp/types.hpp"

namespace afst::sim {

// Advances a unicycle pose along its commanded arc for dt seconds using
// the closed form (exact for constant v, omega; no numeric integration).
inline smdp::Pose propagate_arc(const smdp::Pose& pose,
                                const smdp::ExecutableAction& action, double dt) {
  smdp::Pose out = pose;
  if (action.omega == 0.0) {
    out.x += action.v * dt * std::cos(pose.theta);
    out.y += action.v * dt * std::sin(pose.theta);
    return out;
  }
  const double radius = action.v / action.omega;
  const double theta1 = pose.theta + action.omega * dt;
  out.x += radius * (std::sin(theta1) - std::sin(pose.theta));
  out.y += radius * (std::cos(pose.theta) - std::cos(theta1));
  out.theta = smdp::normalize_angle(theta1);
  return out;
}

}  // namespace afst::sim
