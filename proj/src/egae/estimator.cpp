#include "afst/egae/estimator.hpp"

namespace afst::egae {

std::vector<double> egae_advantages(const EpisodeView& ep, const EstimatorConfig& config) {
  config.validate();
  const smdp::DiscountSpec discount = config.effective_discount();
  const std::size_t n = ep.rewards.size();
  std::vector<double> adv(n, 0.0);
  if (config.kind == Kind::Td0) {
    for (std::size_t i = 0; i < n; ++i) adv[i] = td_residual(ep, i, discount);
    return adv;
  }
  double tail = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double delta = td_residual(ep, i, discount);
    tail = delta +
           smdp::discount_weight(discount, ep.taus[i], 1) * config.lambda * tail;
    adv[i] = tail;
  }
  return adv;
}

std::vector<double> episode_returns(const EpisodeView& ep,
                                    const smdp::DiscountSpec& discount) {
  const std::size_t n = ep.rewards.size();
  std::vector<double> ret(n, 0.0);
  double tail = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    tail = ep.rewards[i] + smdp::discount_weight(discount, ep.taus[i], 1) * tail;
    ret[i] = tail;
  }
  return ret;
}

void finalize_episode(smdp::EpisodeBuffer& episode, const EstimatorConfig& config) {
  std::vector<double> r, t, v;
  const EpisodeView ep = view_of(episode, r, t, v);
  episode.advantages = egae_advantages(ep, config);
  episode.returns = episode_returns(ep, config.effective_discount());
}

}  // namespace afst::egae
