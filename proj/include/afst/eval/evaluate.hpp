#pragma once

#include <functional>
#include <string>
#include <vector>

#include "afst/eval/scenario.hpp"
#include "afst/sim/environment.hpp"
#include "afst/sim/trajectory.hpp"

namespace afst::eval {

// Anything that maps an observation to an executable action. Evaluation
// uses the deterministic policy mean wrapped behind this signature so
// the harness does not depend on the network's scalar type.
using Controller =
    std::function<smdp::ExecutableAction(const sim::Observation&)>;

struct EvalOptions {
  int episodes = 100;
  std::uint64_t seed = 0;
  sim::ExecMode mode = sim::ExecMode::Mode1;
  int max_decisions = 200;      // the paper's step cap
  bool keep_trajectories = false;
};

struct EpisodeResult {
  smdp::TerminalKind terminal = smdp::TerminalKind::Timeout;
  double seconds = 0.0;       // simulated time
  double path_length = 0.0;   // meters driven
  int decisions = 0;
  double mean_fst = 0.0;      // mean planned duration d
  double total_reward = 0.0;
  sim::Trajectory trajectory; // filled only when keep_trajectories
  Scenario scenario;          // ditto (world copies are not cheap)
};

struct EvalReport {
  std::string scenario_name;
  std::vector<EpisodeResult> episodes;
  double success_rate = 0.0;
  double mean_reach_time = 0.0;        // successes only; NaN if none
  double mean_trajectory_length = 0.0; // successes only; NaN if none
  double mean_decisions = 0.0;         // all episodes
  double mean_fst = 0.0;               // all decisions
  double collision_rate = 0.0;
  double timeout_rate = 0.0;
};

// Runs `episodes` episodes of the controller on scenarios drawn from
// the spec (episode e uses scenario seed mix(seed, e)), under the
// decision cap. Fully deterministic per (controller, spec, options).
EvalReport evaluate(const Controller& controller, const sim::RobotSpec& robot,
                    const sim::RewardParams& reward,
                    const sim::ObservationSpec& obs_spec,
                    const ScenarioSpec& spec, const EvalOptions& options);

// report.csv rows: one per episode.
void write_eval_report(const EvalReport& report, const std::string& path);
// Appends one aggregate line in a Table-2-like layout to the stream.
std::string format_report_line(const EvalReport& report);

}  // namespace afst::eval
