#include "afst/train/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace afst::train {

namespace {

std::string kind_name(egae::Kind k) {
  switch (k) {
    case egae::Kind::Egae: return "egae";
    case egae::Kind::GaePerStep: return "gae-per-step";
    case egae::Kind::Td0: return "td0";
  }
  return "?";
}

egae::Kind kind_from(const std::string& s) {
  if (s == "egae") return egae::Kind::Egae;
  if (s == "gae-per-step") return egae::Kind::GaePerStep;
  if (s == "td0") return egae::Kind::Td0;
  throw std::invalid_argument("unknown estimator kind: " + s);
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 0 || steps_per_epoch < 1 || max_episode_steps < 1 || n_workers < 1)
    throw std::invalid_argument("TrainConfig: counts must be positive");
  if (precision != "float32" && precision != "float64")
    throw std::invalid_argument("TrainConfig: precision must be float32 or float64");
  if (!(discount.gamma > 0.0 && discount.gamma <= 1.0))
    throw std::invalid_argument("TrainConfig: gamma must be in (0,1]");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("TrainConfig: lambda must be in [0,1]");
  if (!(ppo.clip_ratio > 0.0) || ppo.policy_iters < 1 || ppo.value_iters < 1)
    throw std::invalid_argument("TrainConfig: bad ppo settings");
  if (force_duration < 0.0)
    throw std::invalid_argument("TrainConfig: force_duration must be >= 0");
  robot.limits.validate();
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{
      {"epochs", c.epochs},
      {"steps_per_epoch", c.steps_per_epoch},
      {"max_episode_steps", c.max_episode_steps},
      {"n_workers", c.n_workers},
      {"seed", c.seed},
      {"precision", c.precision},
      {"gamma", c.discount.gamma},
      {"discount_mode",
       c.discount.mode == smdp::DiscountMode::SmdpTime ? "smdp-time" : "per-step"},
      {"lambda", c.lambda},
      {"estimator", kind_name(c.estimator_kind)},
      {"ppo",
       {{"clip_ratio", c.ppo.clip_ratio},
        {"policy_lr", c.ppo.policy_lr},
        {"value_lr", c.ppo.value_lr},
        {"policy_iters", c.ppo.policy_iters},
        {"value_iters", c.ppo.value_iters}}},
      {"mode", c.mode == sim::ExecMode::Mode1 ? "mode1" : "mode2"},
      {"use_elu", c.use_elu},
      {"use_2d_to_3d", c.use_2d_to_3d},
      {"d_max_3d", c.d_max_3d},
      {"advantage_normalization", c.advantage_normalization},
      {"force_duration", c.force_duration},
      {"robot",
       {{"radius", c.robot.radius},
        {"v_max", c.robot.limits.v_max},
        {"omega_max", c.robot.limits.omega_max},
        {"tau_tp", c.robot.limits.tau_tp}}},
      {"reward",
       {{"r_arr", c.reward.r_arr},
        {"r_col", c.reward.r_col},
        {"eps_a", c.reward.eps_a},
        {"eps_t", c.reward.eps_t},
        {"eps_tau", c.reward.eps_tau},
        {"arrive_radius", c.reward.arrive_radius}}},
      {"observation",
       {{"cells", c.observation.cells},
        {"extent", c.observation.extent},
        {"beams", c.observation.beams},
        {"fov_deg", c.observation.fov * 180.0 / M_PI},
        {"max_range", c.observation.max_range}}},
      {"network",
       {{"conv_channels", c.conv_channels}, {"fc_width", c.fc_width}}},
      {"scenario", c.scenario},
      {"checkpoint_every", c.checkpoint_every},
      {"out_dir", c.out_dir}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  c = TrainConfig{};
  auto get = [&j](const char* key, auto& dst) {
    if (j.contains(key)) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
  };
  get("epochs", c.epochs);
  get("steps_per_epoch", c.steps_per_epoch);
  get("max_episode_steps", c.max_episode_steps);
  get("n_workers", c.n_workers);
  get("seed", c.seed);
  get("precision", c.precision);
  get("gamma", c.discount.gamma);
  if (j.contains("discount_mode")) {
    const std::string m = j.at("discount_mode").get<std::string>();
    if (m == "smdp-time")
      c.discount.mode = smdp::DiscountMode::SmdpTime;
    else if (m == "per-step")
      c.discount.mode = smdp::DiscountMode::PerStep;
    else
      throw std::invalid_argument("unknown discount_mode: " + m);
  }
  get("lambda", c.lambda);
  if (j.contains("estimator"))
    c.estimator_kind = kind_from(j.at("estimator").get<std::string>());
  if (j.contains("ppo")) {
    const auto& p = j.at("ppo");
    if (p.contains("clip_ratio")) c.ppo.clip_ratio = p["clip_ratio"].get<double>();
    if (p.contains("policy_lr")) c.ppo.policy_lr = p["policy_lr"].get<double>();
    if (p.contains("value_lr")) c.ppo.value_lr = p["value_lr"].get<double>();
    if (p.contains("policy_iters")) c.ppo.policy_iters = p["policy_iters"].get<int>();
    if (p.contains("value_iters")) c.ppo.value_iters = p["value_iters"].get<int>();
  }
  if (j.contains("mode")) {
    const std::string m = j.at("mode").get<std::string>();
    if (m == "mode1")
      c.mode = sim::ExecMode::Mode1;
    else if (m == "mode2")
      c.mode = sim::ExecMode::Mode2;
    else
      throw std::invalid_argument("unknown mode: " + m);
  }
  get("use_elu", c.use_elu);
  get("use_2d_to_3d", c.use_2d_to_3d);
  get("d_max_3d", c.d_max_3d);
  get("advantage_normalization", c.advantage_normalization);
  get("force_duration", c.force_duration);
  if (j.contains("robot")) {
    const auto& r = j.at("robot");
    if (r.contains("radius")) c.robot.radius = r["radius"].get<double>();
    if (r.contains("v_max")) c.robot.limits.v_max = r["v_max"].get<double>();
    if (r.contains("omega_max"))
      c.robot.limits.omega_max = r["omega_max"].get<double>();
    if (r.contains("tau_tp")) c.robot.limits.tau_tp = r["tau_tp"].get<double>();
  }
  if (j.contains("reward")) {
    const auto& r = j.at("reward");
    if (r.contains("r_arr")) c.reward.r_arr = r["r_arr"].get<double>();
    if (r.contains("r_col")) c.reward.r_col = r["r_col"].get<double>();
    if (r.contains("eps_a")) c.reward.eps_a = r["eps_a"].get<double>();
    if (r.contains("eps_t")) c.reward.eps_t = r["eps_t"].get<double>();
    if (r.contains("eps_tau")) c.reward.eps_tau = r["eps_tau"].get<double>();
    if (r.contains("arrive_radius"))
      c.reward.arrive_radius = r["arrive_radius"].get<double>();
  }
  if (j.contains("observation")) {
    const auto& o = j.at("observation");
    if (o.contains("cells")) c.observation.cells = o["cells"].get<int>();
    if (o.contains("extent")) c.observation.extent = o["extent"].get<double>();
    if (o.contains("beams")) c.observation.beams = o["beams"].get<int>();
    if (o.contains("fov_deg"))
      c.observation.fov = o["fov_deg"].get<double>() * M_PI / 180.0;
    if (o.contains("max_range")) c.observation.max_range = o["max_range"].get<double>();
  }
  if (j.contains("network")) {
    const auto& n = j.at("network");
    if (n.contains("conv_channels"))
      c.conv_channels = n["conv_channels"].get<std::array<int, 3>>();
    if (n.contains("fc_width")) c.fc_width = n["fc_width"].get<int>();
  }
  if (j.contains("scenario")) c.scenario = j.at("scenario").get<eval::ScenarioSpec>();
  get("checkpoint_every", c.checkpoint_every);
  get("out_dir", c.out_dir);
  c.validate();
}

TrainConfig load_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  nlohmann::json j;
  in >> j;
  return j.get<TrainConfig>();
}

void save_train_config(const TrainConfig& c, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write config " + path);
  out << nlohmann::json(c).dump(2) << "\n";
}

void apply_override(TrainConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must be key=value: " + assignment);
  std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  nlohmann::json j = c;
  std::string pointer = "/";
  for (char ch : key) pointer += ch == '.' ? '/' : ch;
  const nlohmann::json::json_pointer ptr(pointer);
  if (!j.contains(ptr))
    throw std::invalid_argument("unknown config key: " + key);
  nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // not valid JSON: treat as string
  j[ptr] = parsed;
  c = j.get<TrainConfig>();
}

TrainConfig apply_variant(TrainConfig c, const std::string& variant) {
  if (variant == "AFST") return c;
  if (variant == "-ELU") {
    c.use_elu = false;
    return c;
  }
  if (variant == "-2D-to-3D") {
    c.use_2d_to_3d = false;
    return c;
  }
  if (variant == "-EGAE") {
    c.estimator_kind = egae::Kind::Td0;
    return c;
  }
  if (variant == "-SMDP") {
    // Lifted-MDP formulation: per-step discounting in both the
    // advantage estimator and the return targets, gamma fixed at 0.99.
    c.estimator_kind = egae::Kind::GaePerStep;
    c.discount.mode = smdp::DiscountMode::PerStep;
    c.discount.gamma = 0.99;
    return c;
  }
  throw std::invalid_argument("unknown variant: " + variant);
}

}  // namespace afst::train
