#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "afst/smdp/types.hpp"

namespace afst::tp {

// Kinematic limits of the robot plus the TP-space time scale used by
// the 2D-to-3D conversion.
struct RobotLimits {
  double v_max = 0.6;       // m/s
  double omega_max = 0.9;   // rad/s
  double tau_tp = 0.4;      // s

  void validate() const {
    if (!(v_max > 0.0) || !(omega_max > 0.0) || !(tau_tp > 0.0))
      throw std::invalid_argument("RobotLimits: all fields must be positive");
  }
};

namespace detail {
inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite input");
}
}  // namespace detail

// Modified exponential linear unit applied to the raw translational
// component. Continuous at the knee (0.2), strictly increasing, and
// positive everywhere, so the virtual velocity never vanishes. The
// rotational component passes through unchanged.
inline smdp::VirtualAction activate(double v_raw, double omega_raw) {
  detail::require_finite(v_raw, "activate v_raw");
  detail::require_finite(omega_raw, "activate omega_raw");
  smdp::VirtualAction out;
  out.v_tp = v_raw < 0.2 ? 0.2 * std::exp(5.0 * v_raw - 1.0) : v_raw;
  out.omega_tp = omega_raw;
  return out;
}

inline smdp::VirtualAction activate(std::span<const double> raw) {
  if (raw.size() < 2) throw std::invalid_argument("activate: need 2 components");
  return activate(raw[0], raw[1]);
}

// Ablation variant: plain rectifier on the translational component.
// Unlike the modified ELU this can output exactly zero.
inline smdp::VirtualAction activate_relu(double v_raw, double omega_raw) {
  detail::require_finite(v_raw, "activate_relu v_raw");
  detail::require_finite(omega_raw, "activate_relu omega_raw");
  return smdp::VirtualAction{std::max(v_raw, 0.0), omega_raw};
}

// Converts a virtual action to the unique executable action that drives
// the same path in the shortest time: scale both velocities by
// k = max(v_tp/v_max, |omega_tp|/omega_max) and stretch the duration by
// the same factor. At least one limit is attained with equality.
//
// Degenerate inputs with k ~ 0 (possible only through the rectifier
// ablation) map to a stand-still action of duration tau_tp.
inline smdp::ExecutableAction to_executable(const smdp::VirtualAction& virt,
                                            const RobotLimits& limits) {
  detail::require_finite(virt.v_tp, "to_executable v_tp");
  detail::require_finite(virt.omega_tp, "to_executable omega_tp");
  const double k = std::max(virt.v_tp / limits.v_max,
                            std::abs(virt.omega_tp) / limits.omega_max);
  if (!(k > 1e-12)) return smdp::ExecutableAction{0.0, 0.0, limits.tau_tp};
  return smdp::ExecutableAction{virt.v_tp / k, virt.omega_tp / k, k * limits.tau_tp};
}

// The full raw-to-executable pipeline with its ablation switches.
// use_elu=false swaps the modified ELU for a plain rectifier;
// use_2d_to_3d=false bypasses TP space entirely and reads the raw
// vector as a 3D action (see direct_3d below). raw_dim() tells the
// policy how many outputs the active path consumes.
struct ConversionConfig {
  RobotLimits limits;
  bool use_elu = true;
  bool use_2d_to_3d = true;
  double d_max_3d = 3.0;

  int raw_dim() const { return use_2d_to_3d ? 2 : 3; }
};

smdp::ExecutableAction direct_3d(std::span<const double> raw,
                                 const RobotLimits& limits, double d_max);

inline smdp::ExecutableAction convert_raw(std::span<const double> raw,
                                          const ConversionConfig& cfg) {
  if (!cfg.use_2d_to_3d) return direct_3d(raw, cfg.limits, cfg.d_max_3d);
  if (raw.size() < 2) throw std::invalid_argument("convert_raw: need 2 components");
  const smdp::VirtualAction virt = cfg.use_elu ? activate(raw[0], raw[1])
                                               : activate_relu(raw[0], raw[1]);
  return to_executable(virt, cfg.limits);
}

// Ablation path: interpret a 3D raw action directly as (v, omega, d).
// Velocities are clamped to the limits; the duration component is
// squashed through a logistic onto (0, d_max].
inline smdp::ExecutableAction direct_3d(std::span<const double> raw,
                                        const RobotLimits& limits, double d_max = 3.0) {
  if (raw.size() < 3) throw std::invalid_argument("direct_3d: need 3 components");
  for (double c : raw.first(3)) detail::require_finite(c, "direct_3d");
  smdp::ExecutableAction out;
  out.v = std::clamp(raw[0], 0.0, limits.v_max);
  out.omega = std::clamp(raw[1], -limits.omega_max, limits.omega_max);
  out.d = d_max / (1.0 + std::exp(-raw[2]));
  if (out.d <= 0.0) out.d = std::nextafter(0.0, 1.0);  // logistic underflow guard
  return out;
}

}  // namespace afst::tp
