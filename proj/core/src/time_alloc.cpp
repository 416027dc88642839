#include "pamec/time_alloc.hpp"

#include <algorithm>
#include <limits>

namespace pamec {

TimeAllocProblem make_time_alloc_problem(const SolutionState& state, const Scenario& scenario) {
  const auto& cfg = scenario.config;
  TimeAllocProblem prob;
  const auto g = uplink_gains(state.uplink, scenario);
  double received = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) received += state.alloc.p[k] * g[k];
  prob.offload_rate = cfg.bandwidth * std::log2(1.0 + received / (cfg.num_antennas * scenario.consts.noise_power));
  prob.downlink_gain = downlink_gains(state.downlink, state.w, scenario);
  prob.power = state.alloc.p;
  prob.frame = cfg.frame_duration;
  prob.cycles_per_bit = cfg.cycles_per_bit;
  prob.kappa = cfg.chip_kappa;
  prob.efficiency = cfg.harvest_efficiency;
  prob.bs_power = cfg.bs_power;
  return prob;
}

double max_offload_time(const TimeAllocProblem& prob) {
  double limit = prob.frame;
  for (std::size_t k = 0; k < prob.power.size(); ++k) {
    if (prob.power[k] <= 0.0) continue;
    const double harvest_rate = prob.efficiency * prob.bs_power * prob.downlink_gain[k];
    limit = std::min(limit, harvest_rate * prob.frame / (prob.power[k] + harvest_rate));
  }
  return std::max(limit, 0.0);
}

std::vector<double> frequencies_at(const TimeAllocProblem& prob, double tau2) {
  std::vector<double> f(prob.downlink_gain.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double residual =
        prob.efficiency * (prob.frame - tau2) * prob.bs_power * prob.downlink_gain[k] - prob.power[k] * tau2;
    f[k] = residual > 0.0 ? std::cbrt(residual / (prob.frame * prob.kappa)) : 0.0;
  }
  return f;
}

double reduced_objective(const TimeAllocProblem& prob, double tau2) {
  double total = 0.0;
  for (double f : frequencies_at(prob, tau2)) total += f;
  return prob.offload_rate * tau2 + prob.frame / prob.cycles_per_bit * total;
}

TimeAllocResult solve_time_alloc(const TimeAllocProblem& prob, double tol, std::optional<double> incumbent_tau2) {
  TimeAllocResult out;
  const bool no_harvest = std::all_of(prob.downlink_gain.begin(), prob.downlink_gain.end(),
                                      [](double h) { return h <= 0.0; });
  if (no_harvest && prob.offload_rate <= 0.0) {
    out.tau1 = prob.frame;
    out.tau2 = 0.0;
    out.f.assign(prob.downlink_gain.size(), 0.0);
    out.degenerate = true;
    return out;
  }

  if (tol <= 0.0) tol = 1e-10 * prob.frame;
  const double hi = max_offload_time(prob);
  auto phi = [&](double t) { return reduced_objective(prob, t); };
  double tau2 = golden_section_maximize(phi, 0.0, hi, tol);
  double value = phi(tau2);

  if (incumbent_tau2) {
    const double inc = std::clamp(*incumbent_tau2, 0.0, hi);
    const double inc_value = phi(inc);
    if (inc_value >= value) {
      tau2 = inc;
      value = inc_value;
    }
  }
  out.tau2 = tau2;
  out.tau1 = prob.frame - tau2;
  out.f = frequencies_at(prob, tau2);
  out.objective = value;
  return out;
}

TdmaSplit split_tdma_energy(double energy, double uplink_gain, double slot, const Scenario& scenario,
                            double tol) {
  const auto& cfg = scenario.config;
  const double noise = cfg.num_antennas * scenario.consts.noise_power;
  const double t = cfg.frame_duration;
  TdmaSplit out;
  if (!(energy > 0.0)) return out;

  auto freq_for = [&](double p) {
    const double residual = energy - p * slot;
    return residual > 0.0 ? std::cbrt(residual / (t * cfg.chip_kappa)) : 0.0;
  };
  auto bits_for = [&](double p) {
    return slot * cfg.bandwidth * std::log2(1.0 + p * uplink_gain / noise) + t * freq_for(p) / cfg.cycles_per_bit;
  };

  double p = 0.0;
  if (slot > 0.0 && uplink_gain > 0.0) {
    const double p_max = energy / slot;
    p = golden_section_maximize(bits_for, 0.0, p_max, tol > 0.0 ? tol : 1e-12 * p_max);
  }
  out.power = p;
  out.frequency = freq_for(p);
  out.bits = bits_for(p);
  return out;
}

}  // namespace pamec
