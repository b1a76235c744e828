#include "afst/train/trainer.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace afst::train {

std::string metrics_header() {
  return "epoch,env_steps,episodes,mean_return,success_rate,"
         "mean_episode_seconds,mean_episode_steps,mean_fst,policy_loss,"
         "value_loss,mean_ratio,clip_fraction,mean_advantage";
}

std::string metrics_row(const EpochStats& s) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%d,%lld,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                "%.17g,%.17g",
                s.epoch, s.env_steps, s.episodes, s.mean_return, s.success_rate,
                s.mean_episode_seconds, s.mean_episode_steps, s.mean_fst,
                s.policy_loss, s.value_loss, s.mean_ratio, s.clip_fraction,
                s.mean_advantage);
  return buf;
}

namespace {

template <typename T>
TrainResult train_impl(const TrainConfig& cfg, bool quiet) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  save_train_config(cfg, cfg.out_dir + "/config.json");

  Trainer<T> trainer(cfg);
  TrainResult result;
  result.metrics_path = cfg.out_dir + "/metrics.csv";
  result.final_checkpoint = cfg.out_dir + "/checkpoint_final.bin";

  std::ofstream metrics(result.metrics_path, std::ios::trunc);
  if (!metrics)
    throw std::runtime_error("cannot write " + result.metrics_path);
  metrics << metrics_header() << "\n";

  const auto t0 = std::chrono::steady_clock::now();
  try {
    for (int e = 0; e < cfg.epochs; ++e) {
      const EpochStats stats = trainer.run_epoch();
      metrics << metrics_row(stats) << "\n";
      metrics.flush();
      result.history.push_back(stats);
      if (!quiet) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::fprintf(stderr,
                     "[afst] epoch %4d  return %9.2f  SR %.3f  eps %3d  "
                     "fst %.2f  %.1fs\n",
                     stats.epoch, stats.mean_return, stats.success_rate,
                     stats.episodes, stats.mean_fst, wall);
      }
      if (cfg.checkpoint_every > 0 && stats.epoch % cfg.checkpoint_every == 0) {
        char name[64];
        std::snprintf(name, sizeof(name), "/ckpt_%04d.bin", stats.epoch);
        trainer.make_checkpoint().save(cfg.out_dir + name);
      }
    }
  } catch (...) {
    // Leave a resumable snapshot behind before propagating.
    trainer.make_checkpoint().save(cfg.out_dir + "/checkpoint_abort.bin");
    throw;
  }
  trainer.make_checkpoint().save(result.final_checkpoint);
  return result;
}

}  // namespace

TrainResult train(const TrainConfig& config, bool quiet) {
  config.validate();
  if (config.precision == "float64") return train_impl<double>(config, quiet);
  return train_impl<float>(config, quiet);
}

LoadedPolicy load_policy_checkpoint(const std::string& path) {
  const net::Checkpoint ck = net::Checkpoint::load(path);
  LoadedPolicy lp;
  lp.config = ck.meta.at("config").get<TrainConfig>();
  lp.policy =
      std::make_shared<net::PolicyModel<double>>(lp.config.policy_net_config());
  const auto& params = ck.get("policy_params");
  if (static_cast<std::size_t>(lp.policy->params().size()) != params.size())
    throw std::runtime_error("checkpoint: policy parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i)
    lp.policy->params()[static_cast<Eigen::Index>(i)] = params[i];
  return lp;
}

eval::Controller make_mean_controller(
    std::shared_ptr<net::PolicyModel<double>> policy,
    const tp::ConversionConfig& conv, double force_duration) {
  return [policy = std::move(policy), conv,
          force_duration](const sim::Observation& obs) {
    const std::vector<double> raw = policy->mean_action(obs);
    smdp::ExecutableAction act = tp::convert_raw(raw, conv);
    if (force_duration > 0.0) act.d = force_duration;
    return act;
  };
}

LoadedPolicy make_random_policy(const TrainConfig& config, std::uint64_t seed) {
  LoadedPolicy lp;
  lp.config = config;
  lp.policy =
      std::make_shared<net::PolicyModel<double>>(config.policy_net_config());
  util::Rng rng = util::make_rng(seed, 3);
  lp.policy->init_weights(rng);
  return lp;
}

}  // namespace afst::train
