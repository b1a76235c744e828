#pragma once

#include <cmath>

#include "afst/net/network.hpp"

namespace afst::net {

// Plain Adam with bias correction (Kingma & Ba). State is exposed so
// checkpoints can resume bit-exactly.
template <typename T>
class Adam {
 public:
  explicit Adam(int n, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : beta1_(beta1), beta2_(beta2), eps_(eps) {
    m_.setZero(n);
    v_.setZero(n);
  }

  void step(VecX<T>& params, const VecX<T>& grad, double lr) {
    ++t_;
    const T b1 = static_cast<T>(beta1_), b2 = static_cast<T>(beta2_);
    m_ = b1 * m_ + (T(1) - b1) * grad;
    v_ = b2 * v_ + (T(1) - b2) * grad.cwiseProduct(grad);
    const T corr1 = T(1) - static_cast<T>(std::pow(beta1_, t_));
    const T corr2 = T(1) - static_cast<T>(std::pow(beta2_, t_));
    const T alpha = static_cast<T>(lr) / corr1;
    params -= alpha * m_.cwiseQuotient(
                          ((v_ / corr2).cwiseSqrt().array() + static_cast<T>(eps_))
                              .matrix());
  }

  VecX<T>& m() { return m_; }
  VecX<T>& v() { return v_; }
  long long& t() { return t_; }
  const VecX<T>& m() const { return m_; }
  const VecX<T>& v() const { return v_; }
  long long t() const { return t_; }

 private:
  double beta1_, beta2_, eps_;
  long long t_ = 0;
  VecX<T> m_, v_;
};

}  // namespace afst::net
