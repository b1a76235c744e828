#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "afst/net/network.hpp"
#include "afst/sim/observation.hpp"
#include "afst/util/rng.hpp"

namespace afst::net {

inline constexpr double kLogStdInit = -0.6931471805599453;  // ln(0.5)
inline constexpr double kLogStdMin = -4.605170185988091;    // ln(0.01)
inline constexpr double kLogStdMax = 0.6931471805599453;    // ln(2)

// Packs a batch of observations into the [H*W x N] map matrix and
// [2 x N] goal matrix the trunk consumes.
template <typename T>
void pack_batch(const std::vector<const sim::Observation*>& batch,
                MatX<T>& maps, MatX<T>& goals) {
  const int n = static_cast<int>(batch.size());
  const int hw = batch.empty() ? 0 : batch[0]->cells * batch[0]->cells;
  maps.resize(hw, n);
  goals.resize(2, n);
  for (int j = 0; j < n; ++j) {
    const auto& o = *batch[j];
    for (int i = 0; i < hw; ++i) maps(i, j) = static_cast<T>(o.local_map[i]);
    goals(0, j) = static_cast<T>(o.goal_x);
    goals(1, j) = static_cast<T>(o.goal_y);
  }
}

// Diagonal-Gaussian policy. The flat parameter vector is the trunk
// parameters followed by one log standard deviation per action dim.
template <typename T>
class PolicyModel {
 public:
  explicit PolicyModel(const NetConfig& cfg)
      : net_(cfg), params_(net_.n_params() + cfg.out_dim) {
    params_.setZero();
  }

  TrunkNet<T>& net() { return net_; }
  const TrunkNet<T>& net() const { return net_; }
  int action_dim() const { return net_.config().out_dim; }
  int n_params() const { return static_cast<int>(params_.size()); }
  VecX<T>& params() { return params_; }
  const VecX<T>& params() const { return params_; }

  T* log_std() { return params_.data() + net_.n_params(); }
  const T* log_std() const { return params_.data() + net_.n_params(); }

  void init_weights(util::Rng& rng) {
    net_.init(params_.data(), rng);
    for (int a = 0; a < action_dim(); ++a)
      log_std()[a] = static_cast<T>(kLogStdInit);
  }

  void clamp_log_std() {
    for (int a = 0; a < action_dim(); ++a)
      log_std()[a] = std::clamp(log_std()[a], static_cast<T>(kLogStdMin),
                                static_cast<T>(kLogStdMax));
  }

  void mean_batch(const std::vector<const sim::Observation*>& batch,
                  MatX<T>& means,
                  typename TrunkNet<T>::Cache* cache = nullptr) const {
    MatX<T> maps, goals;
    pack_batch(batch, maps, goals);
    net_.forward(params_.data(), maps, goals, means, cache);
  }

  std::vector<double> mean_action(const sim::Observation& obs) const {
    std::vector<const sim::Observation*> one{&obs};
    MatX<T> mu;
    mean_batch(one, mu);
    std::vector<double> out(action_dim());
    for (int a = 0; a < action_dim(); ++a) out[a] = static_cast<double>(mu(a, 0));
    return out;
  }

  // Draws raw = mu + sigma * z and reports log pi(raw | obs). Consumes
  // one normal pair per action dimension so the stream layout does not
  // depend on whether the second half of a pair would get used.
  std::vector<double> sample_action(const sim::Observation& obs, util::Rng& rng,
                                    double* log_prob_out) const {
    const std::vector<double> mu = mean_action(obs);
    std::vector<double> raw(mu.size());
    double lp = 0.0;
    for (std::size_t a = 0; a < mu.size(); ++a) {
      const double z = util::normal_pair(rng).first;
      const double ls = static_cast<double>(log_std()[a]);
      const double sigma = std::exp(ls);
      raw[a] = mu[a] + sigma * z;
      lp += -0.5 * z * z - ls;
    }
    lp -= 0.5 * static_cast<double>(mu.size()) * std::log(2.0 * M_PI);
    if (log_prob_out) *log_prob_out = lp;
    return raw;
  }

  // log pi(raw | mu) for given mean columns; used by the PPO loss.
  static T log_prob(const MatX<T>& means, int col, const T* log_std,
                    const T* raw, int dim) {
    T lp = T(0);
    for (int a = 0; a < dim; ++a) {
      const T z = (raw[a] - means(a, col)) * std::exp(-log_std[a]);
      lp += T(-0.5) * z * z - log_std[a];
    }
    return lp - T(0.5) * T(dim) * static_cast<T>(std::log(2.0 * M_PI));
  }

 private:
  TrunkNet<T> net_;
  VecX<T> params_;
};

template <typename T>
class ValueModel {
 public:
  explicit ValueModel(const NetConfig& cfg_in) : net_(value_cfg(cfg_in)), params_(net_.n_params()) {
    params_.setZero();
  }

  static NetConfig value_cfg(NetConfig cfg) {
    cfg.out_dim = 1;
    return cfg;
  }

  TrunkNet<T>& net() { return net_; }
  const TrunkNet<T>& net() const { return net_; }
  int n_params() const { return static_cast<int>(params_.size()); }
  VecX<T>& params() { return params_; }
  const VecX<T>& params() const { return params_; }

  void init_weights(util::Rng& rng) { net_.init(params_.data(), rng); }

  void value_batch(const std::vector<const sim::Observation*>& batch,
                   MatX<T>& values,
                   typename TrunkNet<T>::Cache* cache = nullptr) const {
    MatX<T> maps, goals;
    pack_batch(batch, maps, goals);
    net_.forward(params_.data(), maps, goals, values, cache);
  }

  double value(const sim::Observation& obs) const {
    std::vector<const sim::Observation*> one{&obs};
    MatX<T> v;
    value_batch(one, v);
    return static_cast<double>(v(0, 0));
  }

 private:
  TrunkNet<T> net_;
  VecX<T> params_;
};

}  // namespace afst::net
