#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "afst/sim/observation.hpp"

namespace afst::smdp {

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double theta) {
  theta = std::remainder(theta, 2.0 * M_PI);
  if (theta <= -M_PI) theta += 2.0 * M_PI;
  return theta;
}

// Robot configuration in the world frame. theta is kept in (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  static Pose make(double x, double y, double theta) {
    return Pose{x, y, normalize_angle(theta)};
  }
};

// A command the robot can actually run: velocities plus the planned
// execution duration (the forward simulation time).
struct ExecutableAction {
  double v = 0.0;      // m/s, in [0, v_m]
  double omega = 0.0;  // rad/s, in [-omega_m, omega_m]
  double d = 0.0;      // planned duration, s, > 0
};

// A point in trajectory parameter space. Virtual velocities are not
// bounded by the robot limits; the conversion to an executable action
// rescales them. v_tp is strictly positive by construction.
struct VirtualAction {
  double v_tp = 0.0;
  double omega_tp = 0.0;
};

// One decision of an episode, as stored by the rollout loop.
struct StepRecord {
  sim::Observation observation;
  std::vector<double> raw_action;  // policy output before activation (2 or 3 dims)
  double reward = 0.0;
  double tau = 0.0;            // actual execution duration, s (collision may truncate)
  double value_estimate = 0.0; // V(s) under the collecting snapshot
  double log_prob = 0.0;       // log-density of raw_action at collection time
};

enum class TerminalKind { Arrived, Collided, Timeout };

inline const char* to_string(TerminalKind k) {
  switch (k) {
    case TerminalKind::Arrived: return "arrived";
    case TerminalKind::Collided: return "collided";
    case TerminalKind::Timeout: return "timeout";
  }
  return "?";
}

// A finished episode plus the per-step quantities the update phase
// consumes. advantages/returns are filled by the estimator at finalize
// time and are empty before that.
struct EpisodeBuffer {
  std::vector<StepRecord> steps;
  TerminalKind terminal_kind = TerminalKind::Timeout;
  std::vector<double> advantages;
  std::vector<double> returns;

  bool finalized() const {
    return advantages.size() == steps.size() && returns.size() == steps.size();
  }

  // Decision times t_i as prefix sums of tau; size() + 1 entries, t_0 = 0.
  std::vector<double> cumulative_times() const {
    std::vector<double> t(steps.size() + 1, 0.0);
    for (std::size_t i = 0; i < steps.size(); ++i) t[i + 1] = t[i] + steps[i].tau;
    return t;
  }
};

enum class DiscountMode { SmdpTime, PerStep };

// Discounting rule. In SmdpTime mode the weight between decisions is
// gamma^(elapsed seconds); PerStep ignores durations and uses
// gamma^(elapsed steps), which is the lifted-MDP formulation.
struct DiscountSpec {
  double gamma = 0.99;
  DiscountMode mode = DiscountMode::SmdpTime;
};

inline double discount_weight(const DiscountSpec& spec, double elapsed_seconds,
                              int elapsed_steps) {
  // Both paths exponentiate with a double so that 1 step and 1 second
  // produce bit-identical weights when durations degenerate to 1 s.
  const double exponent = spec.mode == DiscountMode::SmdpTime
                              ? elapsed_seconds
                              : static_cast<double>(elapsed_steps);
  return std::pow(spec.gamma, exponent);
}

// Discounted return of the episode tail starting at start_index. The
// terminal tail contributes zero (episodes are finished with V = 0).
inline double discounted_return(const EpisodeBuffer& episode, std::size_t start_index,
                                const DiscountSpec& spec) {
  if (start_index >= episode.steps.size())
    throw std::out_of_range("discounted_return: start_index out of range");
  double acc = 0.0;
  for (std::size_t j = episode.steps.size(); j-- > start_index;) {
    acc = episode.steps[j].reward +
          discount_weight(spec, episode.steps[j].tau, 1) * acc;
  }
  return acc;
}

}  // namespace afst::smdp
