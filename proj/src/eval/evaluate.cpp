#include "afst/eval/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "afst/util/rng.hpp"

namespace afst::eval {

EvalReport evaluate(const Controller& controller, const sim::RobotSpec& robot,
                    const sim::RewardParams& reward,
                    const sim::ObservationSpec& obs_spec,
                    const ScenarioSpec& spec, const EvalOptions& options) {
  if (options.episodes < 1)
    throw std::invalid_argument("evaluate: need at least one episode");

  EvalReport report;
  report.scenario_name = to_string(spec.family);
  int successes = 0, collisions = 0, timeouts = 0;
  double rt_sum = 0.0, len_sum = 0.0, dec_sum = 0.0;
  double fst_sum = 0.0;
  long long fst_n = 0;

  for (int e = 0; e < options.episodes; ++e) {
    Scenario scen =
        generate_scenario(spec, robot.radius, util::mix_seed(options.seed, e));
    sim::Environment env(robot, reward, obs_spec, options.mode);
    sim::Observation obs =
        env.reset(scen.world, scen.start, scen.goal_x, scen.goal_y);

    EpisodeResult ep;
    double d_sum = 0.0;
    while (true) {
      const smdp::ExecutableAction act = controller(obs);
      const smdp::Pose before = env.pose();
      const double t_before = env.elapsed_seconds();
      const sim::StepOutcome out = env.step(act);
      ++ep.decisions;
      d_sum += act.d;
      ep.total_reward += out.reward;
      if (options.keep_trajectories) {
        sim::TrajectoryRow row;
        row.t = t_before;
        row.x = before.x;
        row.y = before.y;
        row.theta = before.theta;
        row.v = act.v;
        row.omega = act.omega;
        row.d = act.d;
        row.tau = out.tau;
        row.reward = out.reward;
        row.event = out.event;
        ep.trajectory.push_back(row);
      }
      if (out.event == sim::StepEvent::Arrived) {
        ep.terminal = smdp::TerminalKind::Arrived;
        break;
      }
      if (out.event == sim::StepEvent::Collided) {
        ep.terminal = smdp::TerminalKind::Collided;
        break;
      }
      if (ep.decisions >= options.max_decisions) {
        ep.terminal = smdp::TerminalKind::Timeout;
        break;
      }
      obs = out.next_observation;
    }
    ep.seconds = env.elapsed_seconds();
    ep.path_length = env.path_length();
    ep.mean_fst = d_sum / ep.decisions;
    fst_sum += d_sum;
    fst_n += ep.decisions;
    dec_sum += ep.decisions;
    switch (ep.terminal) {
      case smdp::TerminalKind::Arrived:
        ++successes;
        rt_sum += ep.seconds;
        len_sum += ep.path_length;
        break;
      case smdp::TerminalKind::Collided:
        ++collisions;
        break;
      case smdp::TerminalKind::Timeout:
        ++timeouts;
        break;
    }
    if (options.keep_trajectories) ep.scenario = std::move(scen);
    report.episodes.push_back(std::move(ep));
  }

  const double n = options.episodes;
  report.success_rate = successes / n;
  report.collision_rate = collisions / n;
  report.timeout_rate = timeouts / n;
  report.mean_decisions = dec_sum / n;
  report.mean_fst = fst_n > 0 ? fst_sum / fst_n : 0.0;
  report.mean_reach_time =
      successes > 0 ? rt_sum / successes : std::nan("");
  report.mean_trajectory_length =
      successes > 0 ? len_sum / successes : std::nan("");
  return report;
}

void write_eval_report(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "episode,terminal,seconds,path_length,decisions,mean_fst,total_reward\n";
  char buf[512];
  for (std::size_t e = 0; e < report.episodes.size(); ++e) {
    const auto& ep = report.episodes[e];
    std::snprintf(buf, sizeof(buf), "%zu,%s,%.17g,%.17g,%d,%.17g,%.17g\n", e,
                  smdp::to_string(ep.terminal), ep.seconds, ep.path_length,
                  ep.decisions, ep.mean_fst, ep.total_reward);
    out << buf;
  }
}

std::string format_report_line(const EvalReport& report) {
  char buf[256];
  if (std::isnan(report.mean_reach_time)) {
    std::snprintf(buf, sizeof(buf), "%-8s  SR %.3f  RT /      len /      FST %.2f",
                  report.scenario_name.c_str(), report.success_rate,
                  report.mean_fst);
  } else {
    std::snprintf(buf, sizeof(buf),
                  "%-8s  SR %.3f  RT %6.2f  len %5.2f  FST %.2f",
                  report.scenario_name.c_str(), report.success_rate,
                  report.mean_reach_time, report.mean_trajectory_length,
                  report.mean_fst);
  }
  return buf;
}

}  // namespace afst::eval
