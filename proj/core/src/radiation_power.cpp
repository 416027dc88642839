#include "pamec/radiation_power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pamec {

EffectiveChannel make_effective_channel(std::vector<Eigen::VectorXcd> u, std::vector<double> weight) {
  if (u.size() != weight.size()) throw std::invalid_argument("make_effective_channel: size mismatch");
  EffectiveChannel chan;
  chan.R.reserve(u.size());
  for (const auto& uk : u) {
    chan.R.push_back((uk.conjugate() * uk.transpose()).real());
  }
  chan.u = std::move(u);
  chan.weight = std::move(weight);
  return chan;
}

EffectiveChannel build_effective_channels(const PaLayout& downlink, const Scenario& scenario,
                                          std::span<const double> uplink_gain, double tau1) {
  const auto& cfg = scenario.config;
  const auto& k = scenario.consts;
  const auto m_count = static_cast<Eigen::Index>(downlink.size());
  const double scale = cfg.harvest_efficiency * tau1 * cfg.bs_power * k.eta * k.eta;

  std::vector<Eigen::VectorXcd> u;
  std::vector<double> weight;
  u.reserve(scenario.devices.size());
  for (std::size_t d = 0; d < scenario.devices.size(); ++d) {
    Eigen::VectorXcd uk(m_count);
    for (Eigen::Index m = 0; m < m_count; ++m) {
      // uplink_coeff carries eta; strip it so u_k holds pure phasor / distance.
      uk[m] = uplink_coeff(downlink, static_cast<std::size_t>(m), scenario.devices.positions[d],
                           cfg.waveguide_height, k) /
              k.eta;
    }
    u.push_back(std::move(uk));
    weight.push_back(uplink_gain[d] * scale);
  }
  return make_effective_channel(std::move(u), std::move(weight));
}

double radiation_objective(const EffectiveChannel& chan, const Eigen::VectorXd& w) {
  double total = 0.0;
  for (std::size_t k = 0; k < chan.num_devices(); ++k) total += chan.weight[k] * w.dot(chan.R[k] * w);
  return total;
}

std::vector<double> auxiliary_values(const EffectiveChannel& chan, const Eigen::VectorXd& w) {
  std::vector<double> t;
  t.reserve(chan.num_devices());
  for (const auto& r : chan.R) t.push_back(w.dot(r * w));
  return t;
}

double surrogate_objective(const EffectiveChannel& chan, const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w) {
  double total = 0.0;
  for (std::size_t k = 0; k < chan.num_devices(); ++k) {
    const Eigen::VectorXd rw = chan.R[k] * w_hat;
    total += chan.weight[k] * (2.0 * rw.dot(w) - rw.dot(w_hat));
  }
  return total;
}

Eigen::VectorXd surrogate_gradient(const EffectiveChannel& chan, const Eigen::VectorXd& w_hat) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(w_hat.size());
  for (std::size_t k = 0; k < chan.num_devices(); ++k) a += 2.0 * chan.weight[k] * (chan.R[k] * w_hat);
  return a;
}

Eigen::VectorXd canonical_sign(Eigen::VectorXd w) {
  if (w.size() == 0) return w;
  Eigen::Index idx = 0;
  w.cwiseAbs().maxCoeff(&idx);
  if (w[idx] < 0.0) w = -w;
  return w;
}

RadiationVector sca_step(const EffectiveChannel& chan, const RadiationVector& w_hat) {
  const Eigen::VectorXd a = surrogate_gradient(chan, w_hat.alpha);
  const double norm = a.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) return w_hat;
  return RadiationVector{a / norm};
}

RadiationResult optimize_radiation(const EffectiveChannel& chan, const RadiationVector& w_init, int max_iters,
                                   double tol) {
  RadiationResult out;
  out.w = w_init;
  double best = radiation_objective(chan, w_init.alpha);
  out.trace.push_back(best);

  RadiationVector current = w_init;
  double previous = best;
  for (int it = 0; it < max_iters; ++it) {
    const RadiationVector next = sca_step(chan, current);
    const double value = radiation_objective(chan, next.alpha);
    out.trace.push_back(value);
    ++out.iterations;
    if (value > best) {
      best = value;
      out.w = next;
    }
    const double gain = value - previous;
    current = next;
    previous = value;
    if (gain <= tol * std::abs(value)) break;
  }
  out.w.alpha = canonical_sign(out.w.alpha);
  return out;
}

bool PowerRecovery::any_clamped() const {
  return std::any_of(clamped.begin(), clamped.end(), [](bool c) { return c; });
}

PowerRecovery recover_powers(const SolutionState& state, const Scenario& scenario) {
  const auto k_count = scenario.devices.size();
  PowerRecovery out;
  out.p.assign(k_count, 0.0);
  out.clamped.assign(k_count, false);

  const double t_off = offload_time(state.alloc, state.access, scenario.num_devices());
  if (!(t_off > 0.0)) {
    out.offload_absent = true;
    return out;
  }
  const auto harvested = harvested_energies(state, scenario);
  for (std::size_t k = 0; k < k_count; ++k) {
    const double f = k < state.alloc.f.size() ? state.alloc.f[k] : 0.0;
    const double residual = harvested[k] - local_compute(f, scenario.config).joules;
    if (residual < 0.0) {
      out.clamped[k] = true;
      continue;
    }
    out.p[k] = residual / t_off;
  }
  return out;
}

}  // namespace pamec
