#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "afst/smdp/types.hpp"

namespace afst::egae {

enum class Kind { Egae, GaePerStep, Td0 };

// Estimator selection. Kind Egae follows the configured discount mode;
// GaePerStep forces per-step discounting regardless of it (the lifted
// MDP ablation); Td0 truncates the lambda sum to the one-step residual.
struct EstimatorConfig {
  double lambda = 0.95;
  smdp::DiscountSpec discount{};
  Kind kind = Kind::Egae;

  void validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw std::invalid_argument("EstimatorConfig: lambda must be in [0,1]");
  }

  smdp::DiscountSpec effective_discount() const {
    smdp::DiscountSpec d = discount;
    if (kind == Kind::GaePerStep) d.mode = smdp::DiscountMode::PerStep;
    return d;
  }
};

// Raw per-step view of a finalized episode; values[i] is the stored
// V(s_i) estimate. The value beyond the last step is zero by the
// episode-finish convention.
struct EpisodeView {
  std::span<const double> rewards;
  std::span<const double> taus;
  std::span<const double> values;
};

inline EpisodeView view_of(const smdp::EpisodeBuffer& episode,
                           std::vector<double>& rewards, std::vector<double>& taus,
                           std::vector<double>& values) {
  rewards.clear();
  taus.clear();
  values.clear();
  for (const auto& s : episode.steps) {
    rewards.push_back(s.reward);
    taus.push_back(s.tau);
    values.push_back(s.value_estimate);
  }
  return EpisodeView{rewards, taus, values};
}

// One-step temporal-difference residual
//   delta_i = r_i + w(tau_i) V(s_{i+1}) - V(s_i)
// with w the configured discount weight and terminal successor value 0.
inline double td_residual(const EpisodeView& ep, std::size_t i,
                          const smdp::DiscountSpec& discount) {
  const std::size_t n = ep.rewards.size();
  if (i >= n) throw std::out_of_range("td_residual: index out of range");
  const double next_value = i + 1 < n ? ep.values[i + 1] : 0.0;
  return ep.rewards[i] + smdp::discount_weight(discount, ep.taus[i], 1) * next_value -
         ep.values[i];
}

// Advantage estimates for every step of a finalized episode, computed
// in a single backward pass:
//   A_i = delta_i + w(tau_i) * lambda * A_{i+1},   A beyond the end = 0.
// Expanding the recursion gives the lambda-weighted residual sum with
// time-elapsed discount weights (or per-step weights, per config).
std::vector<double> egae_advantages(const EpisodeView& ep, const EstimatorConfig& config);

// Value targets R, one per step, with terminal tail zero.
std::vector<double> episode_returns(const EpisodeView& ep,
                                    const smdp::DiscountSpec& discount);

// Fills episode.advantages and episode.returns in place.
void finalize_episode(smdp::EpisodeBuffer& episode, const EstimatorConfig& config);

}  // namespace afst::egae
