#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "afst/net/models.hpp"

namespace afst::net {

struct PpoConfig {
  double clip_ratio = 0.2;
  double policy_lr = 3e-4;
  double value_lr = 1e-3;
  int policy_iters = 10;
  int value_iters = 10;
};

struct LossStats {
  double loss = 0.0;
  double mean_ratio = 0.0;
  double clip_fraction = 0.0;
};

// Clipped-surrogate policy loss (negated for minimization):
//   L = -1/N * sum_j min(ratio_j * A_j, g(eps, A_j)),
//   g(eps, A) = (1 + sign(A) * eps) * A.
// Gradients are exact: clipped samples contribute nothing because g is
// constant in the parameters. Batches are processed in fixed-size
// chunks to bound the im2col workspace; accumulation order is fixed, so
// results are reproducible.
template <typename T>
LossStats policy_loss_and_grad(const PolicyModel<T>& model,
                               const std::vector<const sim::Observation*>& obs,
                               const MatX<T>& raw_actions,
                               std::span<const double> old_log_probs,
                               std::span<const double> advantages, double eps,
                               VecX<T>& grad, int chunk = 256) {
  const int n = static_cast<int>(obs.size());
  const int dim = model.action_dim();
  grad.setZero(model.n_params());
  T* g_log_std = grad.data() + model.net().n_params();

  LossStats stats;
  double loss_sum = 0.0, ratio_sum = 0.0;
  int clipped = 0;

  typename TrunkNet<T>::Cache cache;
  for (int base = 0; base < n; base += chunk) {
    const int m = std::min(chunk, n - base);
    std::vector<const sim::Observation*> part(obs.begin() + base,
                                              obs.begin() + base + m);
    MatX<T> maps, goals, mu;
    pack_batch(part, maps, goals);
    model.net().forward(model.params().data(), maps, goals, mu, &cache);

    MatX<T> d_mu = MatX<T>::Zero(dim, m);
    for (int j = 0; j < m; ++j) {
      const int col = base + j;
      const T lp = PolicyModel<T>::log_prob(mu, j, model.log_std(),
                                            raw_actions.col(col).data(), dim);
      const double ratio =
          std::exp(static_cast<double>(lp) - old_log_probs[col]);
      const double adv = advantages[col];
      const double clip_edge = adv >= 0.0 ? (1.0 + eps) * adv : (1.0 - eps) * adv;
      ratio_sum += ratio;
      if (ratio * adv <= clip_edge) {
        loss_sum += ratio * adv;
        // d/dtheta [ratio * adv] = ratio * adv * dlp/dtheta
        const T scale = static_cast<T>(-ratio * adv / n);
        for (int a = 0; a < dim; ++a) {
          const T inv_sigma = std::exp(-model.log_std()[a]);
          const T z = (raw_actions(a, col) - mu(a, j)) * inv_sigma;
          d_mu(a, j) += scale * z * inv_sigma;       // dlp/dmu = z/sigma
          g_log_std[a] += scale * (z * z - T(1));    // dlp/dlogsigma = z^2-1
        }
      } else {
        loss_sum += clip_edge;
        ++clipped;
      }
    }
    model.net().backward(model.params().data(), cache, d_mu, grad.data());
  }

  stats.loss = -loss_sum / n;
  stats.mean_ratio = ratio_sum / n;
  stats.clip_fraction = static_cast<double>(clipped) / n;
  return stats;
}

// Mean squared error between predicted values and target returns.
template <typename T>
double value_loss_and_grad(const ValueModel<T>& model,
                           const std::vector<const sim::Observation*>& obs,
                           std::span<const double> returns, VecX<T>& grad,
                           int chunk = 256) {
  const int n = static_cast<int>(obs.size());
  grad.setZero(model.n_params());
  double loss_sum = 0.0;

  typename TrunkNet<T>::Cache cache;
  for (int base = 0; base < n; base += chunk) {
    const int m = std::min(chunk, n - base);
    std::vector<const sim::Observation*> part(obs.begin() + base,
                                              obs.begin() + base + m);
    MatX<T> maps, goals, v;
    pack_batch(part, maps, goals);
    model.net().forward(model.params().data(), maps, goals, v, &cache);

    MatX<T> d_v(1, m);
    for (int j = 0; j < m; ++j) {
      const double err = static_cast<double>(v(0, j)) - returns[base + j];
      loss_sum += err * err;
      d_v(0, j) = static_cast<T>(2.0 * err / n);
    }
    model.net().backward(model.params().data(), cache, d_v, grad.data());
  }
  return loss_sum / n;
}

}  // namespace afst::net
