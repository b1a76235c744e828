#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "afst/util/rng.hpp"

namespace afst::net {

template <typename T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// Shape of the observation trunk: three 3x3 stride-2 convolutions over
// the single-channel local map, flattened, concatenated with the
// 2-vector relative goal, then two fully connected layers and a linear
// head. Rectifier nonlinearities throughout.
struct NetConfig {
  int map_cells = 120;
  std::array<int, 3> conv_channels = {16, 32, 32};
  int fc_width = 256;
  int out_dim = 2;
};

namespace detail {
inline int conv_out(int in) { return (in - 1) / 2 + 1; }  // 3x3, stride 2, pad 1
}

// Feedforward trunk evaluated over a whole batch at once (features in
// rows, samples in columns). Parameters live in an externally owned
// flat vector so the optimizer, checkpointing and finite-difference
// probes all see one contiguous array.
template <typename T>
class TrunkNet {
 public:
  explicit TrunkNet(const NetConfig& cfg) : cfg_(cfg) {
    int h = cfg.map_cells;
    int c_in = 1;
    for (int l = 0; l < 3; ++l) {
      in_ch_[l] = c_in;
      in_hw_[l] = h;
      h = detail::conv_out(h);
      out_hw_[l] = h;
      c_in = cfg.conv_channels[l];
    }
    flat_ = cfg.conv_channels[2] * out_hw_[2] * out_hw_[2];
    // Parameter layout: conv W/b x3, fc1 W/b, fc2 W/b, head W/b.
    int off = 0;
    for (int l = 0; l < 3; ++l) {
      w_off_[l] = off;
      off += cfg.conv_channels[l] * in_ch_[l] * 9;
      b_off_[l] = off;
      off += cfg.conv_channels[l];
    }
    fc1_w_ = off; off += cfg.fc_width * (flat_ + 2);
    fc1_b_ = off; off += cfg.fc_width;
    fc2_w_ = off; off += cfg.fc_width * cfg.fc_width;
    fc2_b_ = off; off += cfg.fc_width;
    head_w_ = off; off += cfg.out_dim * cfg.fc_width;
    head_b_ = off; off += cfg.out_dim;
    n_params_ = off;
  }

  const NetConfig& config() const { return cfg_; }
  int n_params() const { return n_params_; }
  int flat_features() const { return flat_; }

  struct Cache {
    MatX<T> cols[3];   // im2col matrices per conv layer
    MatX<T> acts[3];   // post-ReLU conv activations, [C*P x N]
    MatX<T> f0;        // trunk features + goal, [(flat+2) x N]
    MatX<T> a4, a5;    // post-ReLU fc activations
  };

  // maps: [H*W x N] column per sample, goals: [2 x N].
  void forward(const T* params, const MatX<T>& maps, const MatX<T>& goals,
               MatX<T>& out, Cache* cache) const {
    const int n = static_cast<int>(maps.cols());
    Cache local;
    Cache& c = cache ? *cache : local;

    const MatX<T>* prev = &maps;
    for (int l = 0; l < 3; ++l) {
      im2col(l, *prev, c.cols[l]);
      const int c_out = cfg_.conv_channels[l];
      const int p = out_hw_[l] * out_hw_[l];
      Eigen::Map<const MatX<T>> w(params + w_off_[l], c_out, in_ch_[l] * 9);
      Eigen::Map<const VecX<T>> b(params + b_off_[l], c_out);
      MatX<T> z = w * c.cols[l];       // [c_out x p*n]
      z.colwise() += b;
      // Reinterpret [c_out x p*n] as [c_out*p x n]: same storage.
      c.acts[l] = Eigen::Map<const MatX<T>>(z.data(), c_out * p, n);
      c.acts[l] = c.acts[l].cwiseMax(T(0));
      prev = &c.acts[l];
    }

    c.f0.resize(flat_ + 2, n);
    c.f0.topRows(flat_) = c.acts[2];
    c.f0.bottomRows(2) = goals;

    Eigen::Map<const MatX<T>> w4(params + fc1_w_, cfg_.fc_width, flat_ + 2);
    Eigen::Map<const VecX<T>> b4(params + fc1_b_, cfg_.fc_width);
    c.a4 = (w4 * c.f0).colwise() + b4;
    c.a4 = c.a4.cwiseMax(T(0));

    Eigen::Map<const MatX<T>> w5(params + fc2_w_, cfg_.fc_width, cfg_.fc_width);
    Eigen::Map<const VecX<T>> b5(params + fc2_b_, cfg_.fc_width);
    c.a5 = (w5 * c.a4).colwise() + b5;
    c.a5 = c.a5.cwiseMax(T(0));

    Eigen::Map<const MatX<T>> wh(params + head_w_, cfg_.out_dim, cfg_.fc_width);
    Eigen::Map<const VecX<T>> bh(params + head_b_, cfg_.out_dim);
    out = (wh * c.a5).colwise() + bh;
  }

  // Accumulates parameter gradients for upstream d_out into grad
  // (same layout as params). Input gradients are not produced.
  void backward(const T* params, const Cache& c, const MatX<T>& d_out,
                T* grad) const {
    const int n = static_cast<int>(d_out.cols());

    Eigen::Map<const MatX<T>> wh(params + head_w_, cfg_.out_dim, cfg_.fc_width);
    Eigen::Map<MatX<T>> g_wh(grad + head_w_, cfg_.out_dim, cfg_.fc_width);
    Eigen::Map<VecX<T>> g_bh(grad + head_b_, cfg_.out_dim);
    g_wh.noalias() += d_out * c.a5.transpose();
    g_bh.noalias() += d_out.rowwise().sum();

    MatX<T> d5 = wh.transpose() * d_out;
    d5 = d5.cwiseProduct((c.a5.array() > T(0)).template cast<T>().matrix());

    Eigen::Map<const MatX<T>> w5(params + fc2_w_, cfg_.fc_width, cfg_.fc_width);
    Eigen::Map<MatX<T>> g_w5(grad + fc2_w_, cfg_.fc_width, cfg_.fc_width);
    Eigen::Map<VecX<T>> g_b5(grad + fc2_b_, cfg_.fc_width);
    g_w5.noalias() += d5 * c.a4.transpose();
    g_b5.noalias() += d5.rowwise().sum();

    MatX<T> d4 = w5.transpose() * d5;
    d4 = d4.cwiseProduct((c.a4.array() > T(0)).template cast<T>().matrix());

    Eigen::Map<const MatX<T>> w4(params + fc1_w_, cfg_.fc_width, flat_ + 2);
    Eigen::Map<MatX<T>> g_w4(grad + fc1_w_, cfg_.fc_width, flat_ + 2);
    Eigen::Map<VecX<T>> g_b4(grad + fc1_b_, cfg_.fc_width);
    g_w4.noalias() += d4 * c.f0.transpose();
    g_b4.noalias() += d4.rowwise().sum();

    MatX<T> df0 = w4.transpose() * d4;   // [(flat+2) x n]; goal rows dropped
    MatX<T> d_act = df0.topRows(flat_);
    d_act = d_act.cwiseProduct((c.acts[2].array() > T(0)).template cast<T>().matrix());

    for (int l = 2; l >= 0; --l) {
      const int c_out = cfg_.conv_channels[l];
      const int p = out_hw_[l] * out_hw_[l];
      // [c_out*p x n] viewed as [c_out x p*n]: same storage.
      Eigen::Map<const MatX<T>> dz(d_act.data(), c_out, p * n);
      Eigen::Map<MatX<T>> g_w(grad + w_off_[l], c_out, in_ch_[l] * 9);
      Eigen::Map<VecX<T>> g_b(grad + b_off_[l], c_out);
      g_w.noalias() += dz * c.cols[l].transpose();
      g_b.noalias() += dz.rowwise().sum();
      if (l == 0) break;  // input gradients not needed
      Eigen::Map<const MatX<T>> w(params + w_off_[l], c_out, in_ch_[l] * 9);
      MatX<T> dcols = w.transpose() * dz;  // [in_ch*9 x p*n]
      col2im(l, dcols, n, d_act);
      d_act = d_act.cwiseProduct(
          (c.acts[l - 1].array() > T(0)).template cast<T>().matrix());
    }
  }

  // He-normal weights, zero biases; the head is scaled down so initial
  // outputs stay near zero.
  void init(T* params, util::Rng& rng) const {
    auto fill = [&](int off, int rows, int cols, int fan_in, double scale) {
      const double stddev = scale * std::sqrt(2.0 / fan_in);
      for (int i = 0; i < rows * cols; ++i)
        params[off + i] = static_cast<T>(stddev * util::normal(rng));
    };
    for (int l = 0; l < 3; ++l) {
      fill(w_off_[l], cfg_.conv_channels[l], in_ch_[l] * 9, in_ch_[l] * 9, 1.0);
      std::fill(params + b_off_[l], params + b_off_[l] + cfg_.conv_channels[l], T(0));
    }
    fill(fc1_w_, cfg_.fc_width, flat_ + 2, flat_ + 2, 1.0);
    std::fill(params + fc1_b_, params + fc1_b_ + cfg_.fc_width, T(0));
    fill(fc2_w_, cfg_.fc_width, cfg_.fc_width, cfg_.fc_width, 1.0);
    std::fill(params + fc2_b_, params + fc2_b_ + cfg_.fc_width, T(0));
    fill(head_w_, cfg_.out_dim, cfg_.fc_width, cfg_.fc_width, 0.01);
    std::fill(params + head_b_, params + head_b_ + cfg_.out_dim, T(0));
  }

 private:
  void im2col(int l, const MatX<T>& input, MatX<T>& cols) const {
    const int n = static_cast<int>(input.cols());
    const int hw_in = in_hw_[l], hw_out = out_hw_[l];
    const int c_in = in_ch_[l];
    const int p = hw_out * hw_out;
    cols.resize(c_in * 9, static_cast<Eigen::Index>(p) * n);
    for (int j = 0; j < n; ++j) {
      const T* src = input.col(j).data();
      for (int oy = 0; oy < hw_out; ++oy)
        for (int ox = 0; ox < hw_out; ++ox) {
          T* dst = cols.col(static_cast<Eigen::Index>(j) * p + oy * hw_out + ox).data();
          for (int ky = 0; ky < 3; ++ky) {
            const int iy = 2 * oy - 1 + ky;
            for (int kx = 0; kx < 3; ++kx) {
              const int ix = 2 * ox - 1 + kx;
              T* cell = dst + (ky * 3 + kx) * c_in;
              if (iy < 0 || ix < 0 || iy >= hw_in || ix >= hw_in) {
                for (int ci = 0; ci < c_in; ++ci) cell[ci] = T(0);
              } else {
                const T* patch = src + (static_cast<std::size_t>(iy) * hw_in + ix) * c_in;
                for (int ci = 0; ci < c_in; ++ci) cell[ci] = patch[ci];
              }
            }
          }
        }
    }
  }

  // Scatter-add of column gradients back onto the input activation grid.
  void col2im(int l, const MatX<T>& dcols, int n, MatX<T>& d_input) const {
    const int hw_in = in_hw_[l], hw_out = out_hw_[l];
    const int c_in = in_ch_[l];
    const int p = hw_out * hw_out;
    d_input.setZero(static_cast<Eigen::Index>(hw_in) * hw_in * c_in, n);
    for (int j = 0; j < n; ++j) {
      T* dst = d_input.col(j).data();
      for (int oy = 0; oy < hw_out; ++oy)
        for (int ox = 0; ox < hw_out; ++ox) {
          const T* src =
              dcols.col(static_cast<Eigen::Index>(j) * p + oy * hw_out + ox).data();
          for (int ky = 0; ky < 3; ++ky) {
            const int iy = 2 * oy - 1 + ky;
            if (iy < 0 || iy >= hw_in) continue;
            for (int kx = 0; kx < 3; ++kx) {
              const int ix = 2 * ox - 1 + kx;
              if (ix < 0 || ix >= hw_in) continue;
              const T* cell = src + (ky * 3 + kx) * c_in;
              T* patch = dst + (static_cast<std::size_t>(iy) * hw_in + ix) * c_in;
              for (int ci = 0; ci < c_in; ++ci) patch[ci] += cell[ci];
            }
          }
        }
    }
  }

  NetConfig cfg_;
  int in_ch_[3]{}, in_hw_[3]{}, out_hw_[3]{};
  int flat_ = 0;
  int w_off_[3]{}, b_off_[3]{};
  int fc1_w_ = 0, fc1_b_ = 0, fc2_w_ = 0, fc2_b_ = 0, head_w_ = 0, head_b_ = 0;
  int n_params_ = 0;
};

}  // namespace afst::net
