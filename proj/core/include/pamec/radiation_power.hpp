#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pamec/channel.hpp"
#include "pamec/system_model.hpp"

namespace pamec {

/// Per-device quadratic forms of the radiation sub-problem:
/// objective(w) = sum_k weight_k * w^T R_k w, with w^T R_k w = |u_k^T w|^2.
struct EffectiveChannel {
  std::vector<Eigen::VectorXcd> u;   // e^{-j phase} / r per antenna (no eta, no alpha)
  std::vector<Eigen::MatrixXd> R;    // Re(conj(u) u^T), symmetric PSD
  std::vector<double> weight;        // g_k beta tau1 P_B eta^2

  std::size_t num_devices() const { return u.size(); }
  int num_antennas() const { return u.empty() ? 0 : static_cast<int>(u.front().size()); }
};

/// Builds u_k from the downlink layout, since alpha_m only acts on downlink power.
EffectiveChannel build_effective_channels(const PaLayout& downlink, const Scenario& scenario,
                                          std::span<const double> uplink_gain, double tau1);

/// Assembles R_k and weights from explicit u_k vectors.
EffectiveChannel make_effective_channel(std::vector<Eigen::VectorXcd> u, std::vector<double> weight);

/// sum_k weight_k w^T R_k w; this is the g-weighted harvested energy.
double radiation_objective(const EffectiveChannel& chan, const Eigen::VectorXd& w);

/// t_k values at w, i.e. w^T R_k w.
std::vector<double> auxiliary_values(const EffectiveChannel& chan, const Eigen::VectorXd& w);

/// Linearised objective around w_hat: sum_k weight_k (2 w_hat^T R_k w - w_hat^T R_k w_hat).
double surrogate_objective(const EffectiveChannel& chan, const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w);

/// Gradient of the surrogate, a = sum_k 2 weight_k R_k w_hat.
Eigen::VectorXd surrogate_gradient(const EffectiveChannel& chan, const Eigen::VectorXd& w_hat);

/// Flips the sign so the largest-magnitude entry is non-negative.
Eigen::VectorXd canonical_sign(Eigen::VectorXd w);

/// Exact maximiser of the linearised problem over the unit ball: a / ||a||.
/// Returns w_hat unchanged when a = 0. No sign canonicalisation here: the
/// linearised objective is odd in w.
RadiationVector sca_step(const EffectiveChannel& chan, const RadiationVector& w_hat);

struct RadiationResult {
  RadiationVector w;
  std::vector<double> trace;  // objective of each iterate, starting with w_init
  int iterations = 0;
};

/// Iterates sca_step from w_init; the returned w is the best iterate with
/// canonical sign.
RadiationResult optimize_radiation(const EffectiveChannel& chan, const RadiationVector& w_init,
                                   int max_iters = 100, double tol = 1e-8);

struct PowerRecovery {
  std::vector<double> p;
  std::vector<bool> clamped;  // E_k < e_k: energy cannot cover local computing
  bool offload_absent = false;  // tau2 == 0
  bool any_clamped() const;
};

/// p_k = max(0, (E_k - e_k) / t_k) with t_k the per-device offload time.
PowerRecovery recover_powers(const SolutionState& state, const Scenario& scenario);

}  // namespace pamec
