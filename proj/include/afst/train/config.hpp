#pragma once

#include <array>
#include <string>

#include <nlohmann/json.hpp>

#include "afst/egae/estimator.hpp"
#include "afst/eval/scenario.hpp"
#include "afst/net/losses.hpp"
#include "afst/sim/environment.hpp"

namespace afst::train {

// Everything a training run depends on. Serializes to a flat JSON
// document; every field can be overridden from the command line with
// --override dotted.key=value.
struct TrainConfig {
  int epochs = 200;
  int steps_per_epoch = 4096;   // T_ep, summed across workers
  int max_episode_steps = 200;  // T_m
  int n_workers = 8;
  std::uint64_t seed = 1;
  std::string precision = "float32";  // float32 | float64

  smdp::DiscountSpec discount{};      // gamma per second, smdp-time
  double lambda = 0.95;
  egae::Kind estimator_kind = egae::Kind::Egae;

  net::PpoConfig ppo{};
  sim::ExecMode mode = sim::ExecMode::Mode1;

  bool use_elu = true;        // false: '-ELU' ablation (plain rectifier)
  bool use_2d_to_3d = true;   // false: '-2D-to-3D' ablation (direct 3D head)
  double d_max_3d = 3.0;
  bool advantage_normalization = false;
  double force_duration = 0.0;  // >0: override every planned duration (test hook)

  sim::RobotSpec robot{};
  sim::RewardParams reward{};
  sim::ObservationSpec observation{};
  std::array<int, 3> conv_channels = {16, 32, 32};
  int fc_width = 256;

  eval::ScenarioSpec scenario = eval::ScenarioSpec::preset("sparse");

  int checkpoint_every = 50;
  std::string out_dir = "runs/afst";

  void validate() const;

  egae::EstimatorConfig estimator_config() const {
    return egae::EstimatorConfig{lambda, discount, estimator_kind};
  }
  tp::ConversionConfig conversion_config() const {
    return tp::ConversionConfig{robot.limits, use_elu, use_2d_to_3d, d_max_3d};
  }
  net::NetConfig policy_net_config() const {
    return net::NetConfig{observation.cells, conv_channels, fc_width,
                          conversion_config().raw_dim()};
  }
};

void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);

TrainConfig load_train_config(const std::string& path);
void save_train_config(const TrainConfig& c, const std::string& path);

// Applies "dotted.key=value"; value is parsed as JSON when possible,
// else taken as a string. Throws on unknown keys.
void apply_override(TrainConfig& c, const std::string& assignment);

// Maps an ablation name from {AFST, -ELU, -2D-to-3D, -EGAE, -SMDP}
// onto the corresponding flag change.
TrainConfig apply_variant(TrainConfig c, const std::string& variant);

}  // namespace afst::train
