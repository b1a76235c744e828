#pragma once

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "afst/egae/estimator.hpp"
#include "afst/eval/evaluate.hpp"
#include "afst/net/adam.hpp"
#include "afst/net/checkpoint.hpp"
#include "afst/net/models.hpp"
#include "afst/train/config.hpp"

namespace afst::train {

struct EpochStats {
  int epoch = 0;
  long long env_steps = 0;  // cumulative
  int episodes = 0;
  double mean_return = 0.0;
  double success_rate = 0.0;
  double mean_episode_seconds = 0.0;
  double mean_episode_steps = 0.0;
  double mean_fst = 0.0;
  double policy_loss = 0.0;    // mean over the E_pi iterations
  double value_loss = 0.0;     // mean over the E_v iterations
  double mean_ratio = 0.0;     // first policy iteration (freshness check)
  double clip_fraction = 0.0;  // last policy iteration
  double mean_advantage = 0.0;
};

std::string metrics_header();
std::string metrics_row(const EpochStats& s);

// Algorithm core: epoch-synchronous rollout across worker threads, then
// full-buffer policy/value updates on a single updater thread. One
// instance per run; deterministic per (config, seed, n_workers).
template <typename T>
class Trainer {
 public:
  explicit Trainer(const TrainConfig& config)
      : cfg_(config),
        conv_(config.conversion_config()),
        est_(config.estimator_config()),
        policy_(config.policy_net_config()),
        value_(config.policy_net_config()),
        policy_adam_(policy_.n_params()),
        value_adam_(value_.n_params()) {
    cfg_.validate();
    util::Rng pr = util::make_rng(cfg_.seed, 1);
    policy_.init_weights(pr);
    util::Rng vr = util::make_rng(cfg_.seed, 2);
    value_.init_weights(vr);
    for (int w = 0; w < cfg_.n_workers; ++w)
      worker_rngs_.push_back(util::make_rng(cfg_.seed, 100 + w));
  }

  const TrainConfig& config() const { return cfg_; }
  net::PolicyModel<T>& policy() { return policy_; }
  const net::PolicyModel<T>& policy() const { return policy_; }
  net::ValueModel<T>& value() { return value_; }
  const std::vector<smdp::EpisodeBuffer>& buffer() const { return buffer_; }
  int epoch() const { return epoch_; }
  long long env_steps() const { return env_steps_; }

  // Collects one epoch of experience into the internal buffer.
  // Worker results are merged in worker-index order.
  void rollout_epoch() {
    const int budget =
        (cfg_.steps_per_epoch + cfg_.n_workers - 1) / cfg_.n_workers;
    std::vector<WorkerOut> outs(cfg_.n_workers);
    if (cfg_.n_workers == 1) {
      run_worker(0, budget, outs[0]);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(cfg_.n_workers);
      for (int w = 0; w < cfg_.n_workers; ++w)
        threads.emplace_back([this, w, budget, &outs] {
          run_worker(w, budget, outs[w]);
        });
      for (auto& t : threads) t.join();
    }
    buffer_.clear();
    planned_d_sum_ = 0.0;
    for (auto& out : outs) {
      planned_d_sum_ += out.planned_d;
      for (auto& ep : out.episodes) buffer_.push_back(std::move(ep));
    }
  }

  // Full-buffer PPO update; fills the loss/ratio fields of stats.
  void update(EpochStats& stats) {
    std::size_t n = 0;
    for (const auto& ep : buffer_) n += ep.steps.size();
    if (n == 0) throw std::runtime_error("update: empty buffer");
    const int dim = policy_.action_dim();

    std::vector<const sim::Observation*> obs;
    obs.reserve(n);
    net::MatX<T> raw(dim, n);
    std::vector<double> old_lp, adv, ret;
    old_lp.reserve(n);
    adv.reserve(n);
    ret.reserve(n);
    for (const auto& ep : buffer_) {
      for (std::size_t i = 0; i < ep.steps.size(); ++i) {
        const auto& st = ep.steps[i];
        const std::size_t col = obs.size();
        obs.push_back(&st.observation);
        for (int a = 0; a < dim; ++a)
          raw(a, col) = static_cast<T>(st.raw_action[a]);
        old_lp.push_back(st.log_prob);
        adv.push_back(ep.advantages[i]);
        ret.push_back(ep.returns[i]);
      }
    }

    double adv_mean = 0.0;
    for (double a : adv) adv_mean += a;
    adv_mean /= static_cast<double>(n);
    stats.mean_advantage = adv_mean;
    if (cfg_.advantage_normalization) {
      double var = 0.0;
      for (double a : adv) var += (a - adv_mean) * (a - adv_mean);
      const double std = std::sqrt(var / static_cast<double>(n)) + 1e-8;
      for (double& a : adv) a = (a - adv_mean) / std;
    }

    net::VecX<T> grad;
    for (int it = 0; it < cfg_.ppo.policy_iters; ++it) {
      const net::LossStats ls = net::policy_loss_and_grad(
          policy_, obs, raw, old_lp, adv, cfg_.ppo.clip_ratio, grad);
      if (!std::isfinite(ls.loss))
        throw std::runtime_error("update: non-finite policy loss at epoch " +
                                 std::to_string(epoch_));
      policy_adam_.step(policy_.params(), grad, cfg_.ppo.policy_lr);
      policy_.clamp_log_std();
      stats.policy_loss += ls.loss / cfg_.ppo.policy_iters;
      if (it == 0) stats.mean_ratio = ls.mean_ratio;
      if (it == cfg_.ppo.policy_iters - 1) stats.clip_fraction = ls.clip_fraction;
    }
    for (int it = 0; it < cfg_.ppo.value_iters; ++it) {
      const double vl = net::value_loss_and_grad(value_, obs, ret, grad);
      if (!std::isfinite(vl))
        throw std::runtime_error("update: non-finite value loss at epoch " +
                                 std::to_string(epoch_));
      value_adam_.step(value_.params(), grad, cfg_.ppo.value_lr);
      stats.value_loss += vl / cfg_.ppo.value_iters;
    }
  }

  EpochStats run_epoch() {
    rollout_epoch();
    EpochStats stats;
    stats.epoch = ++epoch_;
    std::size_t n_steps = 0;
    double ret_sum = 0.0, sec_sum = 0.0;
    int arrived = 0;
    for (const auto& ep : buffer_) {
      double r = 0.0, t = 0.0;
      for (const auto& st : ep.steps) {
        r += st.reward;
        t += st.tau;
      }
      ret_sum += r;
      sec_sum += t;
      n_steps += ep.steps.size();
      if (ep.terminal_kind == smdp::TerminalKind::Arrived) ++arrived;
    }
    env_steps_ += static_cast<long long>(n_steps);
    stats.env_steps = env_steps_;
    stats.episodes = static_cast<int>(buffer_.size());
    stats.mean_return = ret_sum / stats.episodes;
    stats.success_rate = static_cast<double>(arrived) / stats.episodes;
    stats.mean_episode_seconds = sec_sum / stats.episodes;
    stats.mean_episode_steps =
        static_cast<double>(n_steps) / stats.episodes;
    stats.mean_fst = planned_d_sum_ / static_cast<double>(n_steps);
    update(stats);
    return stats;
  }

  net::Checkpoint make_checkpoint() const {
    net::Checkpoint ck;
    ck.meta["config"] = cfg_;
    ck.meta["epoch"] = epoch_;
    ck.meta["env_steps"] = env_steps_;
    ck.meta["policy_adam_t"] = policy_adam_.t();
    ck.meta["value_adam_t"] = value_adam_.t();
    auto span_of = [](const net::VecX<T>& v) {
      return std::span<const T>(v.data(), static_cast<std::size_t>(v.size()));
    };
    ck.add_cast<T>("policy_params", span_of(policy_.params()));
    ck.add_cast<T>("policy_adam_m", span_of(policy_adam_.m()));
    ck.add_cast<T>("policy_adam_v", span_of(policy_adam_.v()));
    ck.add_cast<T>("value_params", span_of(value_.params()));
    ck.add_cast<T>("value_adam_m", span_of(value_adam_.m()));
    ck.add_cast<T>("value_adam_v", span_of(value_adam_.v()));
    return ck;
  }

  void restore(const net::Checkpoint& ck) {
    auto fill = [](const std::vector<double>& src, net::VecX<T>& dst) {
      if (static_cast<std::size_t>(dst.size()) != src.size())
        throw std::runtime_error("checkpoint: tensor size mismatch");
      for (std::size_t i = 0; i < src.size(); ++i)
        dst[static_cast<Eigen::Index>(i)] = static_cast<T>(src[i]);
    };
    fill(ck.get("policy_params"), policy_.params());
    fill(ck.get("policy_adam_m"), policy_adam_.m());
    fill(ck.get("policy_adam_v"), policy_adam_.v());
    fill(ck.get("value_params"), value_.params());
    fill(ck.get("value_adam_m"), value_adam_.m());
    fill(ck.get("value_adam_v"), value_adam_.v());
    epoch_ = ck.meta.at("epoch").get<int>();
    env_steps_ = ck.meta.at("env_steps").get<long long>();
    policy_adam_.t() = ck.meta.at("policy_adam_t").get<long long>();
    value_adam_.t() = ck.meta.at("value_adam_t").get<long long>();
  }

 private:
  struct WorkerOut {
    std::vector<smdp::EpisodeBuffer> episodes;
    double planned_d = 0.0;
  };

  sim::Observation reset_env(sim::Environment& env, util::Rng& rng) {
    const eval::Scenario scen =
        eval::generate_scenario(cfg_.scenario, cfg_.robot.radius, rng());
    return env.reset(scen.world, scen.start, scen.goal_x, scen.goal_y);
  }

  void run_worker(int w, int budget, WorkerOut& out) {
    util::Rng& rng = worker_rngs_[w];
    sim::Environment env(cfg_.robot, cfg_.reward, cfg_.observation, cfg_.mode);
    smdp::EpisodeBuffer ep;
    sim::Observation obs = reset_env(env, rng);
    for (int i = 0; i < budget; ++i) {
      smdp::StepRecord rec;
      rec.observation = obs;
      rec.value_estimate = value_.value(obs);
      rec.raw_action = policy_.sample_action(obs, rng, &rec.log_prob);
      smdp::ExecutableAction act = tp::convert_raw(rec.raw_action, conv_);
      if (cfg_.force_duration > 0.0) act.d = cfg_.force_duration;
      const sim::StepOutcome so = env.step(act);
      rec.reward = so.reward;
      rec.tau = so.tau;
      out.planned_d += act.d;
      ep.steps.push_back(std::move(rec));

      bool done = true;
      if (so.event == sim::StepEvent::Arrived)
        ep.terminal_kind = smdp::TerminalKind::Arrived;
      else if (so.event == sim::StepEvent::Collided)
        ep.terminal_kind = smdp::TerminalKind::Collided;
      else if (static_cast<int>(ep.steps.size()) >= cfg_.max_episode_steps)
        ep.terminal_kind = smdp::TerminalKind::Timeout;
      else
        done = false;

      if (done) {
        egae::finalize_episode(ep, est_);
        out.episodes.push_back(std::move(ep));
        ep = smdp::EpisodeBuffer{};
        if (i + 1 < budget) obs = reset_env(env, rng);
      } else {
        obs = so.next_observation;
      }
    }
    if (!ep.steps.empty()) {
      // Budget boundary: finalize the partial episode by timeout rules.
      ep.terminal_kind = smdp::TerminalKind::Timeout;
      egae::finalize_episode(ep, est_);
      out.episodes.push_back(std::move(ep));
    }
  }

  TrainConfig cfg_;
  tp::ConversionConfig conv_;
  egae::EstimatorConfig est_;
  net::PolicyModel<T> policy_;
  net::ValueModel<T> value_;
  net::Adam<T> policy_adam_;
  net::Adam<T> value_adam_;
  std::vector<util::Rng> worker_rngs_;
  std::vector<smdp::EpisodeBuffer> buffer_;
  double planned_d_sum_ = 0.0;
  int epoch_ = 0;
  long long env_steps_ = 0;
};

struct TrainResult {
  std::vector<EpochStats> history;
  std::string metrics_path;
  std::string final_checkpoint;
};

// Full training entry point: creates out_dir, writes the resolved
// config, metric CSV and checkpoint series. Console progress goes to
// stderr (wall time is deliberately kept out of the CSV so identical
// runs produce identical files).
TrainResult train(const TrainConfig& config, bool quiet = false);

// Rebuilds the policy (at double precision) and the conversion pipeline
// from a checkpoint, for evaluation and rendering.
struct LoadedPolicy {
  TrainConfig config;
  std::shared_ptr<net::PolicyModel<double>> policy;
};
LoadedPolicy load_policy_checkpoint(const std::string& path);

// Deterministic-mean controller over the loaded policy.
eval::Controller make_mean_controller(std::shared_ptr<net::PolicyModel<double>> policy,
                                      const tp::ConversionConfig& conv,
                                      double force_duration = 0.0);

// Fresh randomly initialized policy (negative control in the harness).
LoadedPolicy make_random_policy(const TrainConfig& config, std::uint64_t seed);

}  // namespace afst::train
