#pragma once

#include <string>
#include <vector>

#include "afst/sim/environment.hpp"

namespace afst::sim {

// One planning decision as logged for rendering and offline analysis.
// t and (x, y, theta) describe the robot at the moment the decision was
// made; (v, omega, d) is the commanded action, tau what actually ran.
struct TrajectoryRow {
  double t = 0.0;
  double x = 0.0, y = 0.0, theta = 0.0;
  double v = 0.0, omega = 0.0, d = 0.0;
  double tau = 0.0;
  double reward = 0.0;
  StepEvent event = StepEvent::None;
};

using Trajectory = std::vector<TrajectoryRow>;

// CSV columns: t,x,y,theta,v,omega,d,tau,reward,event.
void write_trajectory(const Trajectory& rows, const std::string& path);
Trajectory read_trajectory(const std::string& path);

}  // namespace afst::sim
