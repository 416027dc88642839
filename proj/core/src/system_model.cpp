#include "pamec/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pamec {

double harvested_energy(const PaLayout& downlink, const RadiationVector& w, const Position& device,
                        double tau1, const ScenarioConfig& config, const ChannelConstants& consts) {
  const double gain = aggregate_downlink_gain(downlink, w, device, config.waveguide_height, consts);
  return config.harvest_efficiency * tau1 * config.bs_power * gain;
}

LocalCompute local_compute(double f, const ScenarioConfig& config) {
  const double t = config.frame_duration;
  return {t * f / config.cycles_per_bit, t * config.chip_kappa * f * f * f};
}

std::vector<double> uplink_gains(const PaLayout& uplink, const Scenario& scenario) {
  std::vector<double> g;
  g.reserve(scenario.devices.size());
  for (const auto& dev : scenario.devices.positions) {
    g.push_back(aggregate_uplink_gain(uplink, dev, scenario.config.waveguide_height, scenario.consts));
  }
  return g;
}

std::vector<double> downlink_gains(const PaLayout& downlink, const RadiationVector& w,
                                   const Scenario& scenario) {
  std::vector<double> h;
  h.reserve(scenario.devices.size());
  for (const auto& dev : scenario.devices.positions) {
    h.push_back(aggregate_downlink_gain(downlink, w, dev, scenario.config.waveguide_height, scenario.consts));
  }
  return h;
}

std::vector<double> harvested_energies(const SolutionState& state, const Scenario& scenario) {
  std::vector<double> e;
  e.reserve(scenario.devices.size());
  for (const auto& dev : scenario.devices.positions) {
    e.push_back(harvested_energy(state.downlink, state.w, dev, state.alloc.tau1, scenario.config,
                                 scenario.consts));
  }
  return e;
}

double offload_time(const ResourceAllocation& alloc, MultipleAccess access, int num_devices) {
  if (access == MultipleAccess::tdma) {
    return num_devices > 0 ? alloc.tau2 / num_devices : 0.0;
  }
  return alloc.tau2;
}

double offload_bits(const PaLayout& uplink, const ResourceAllocation& alloc, const Scenario& scenario,
                    MultipleAccess access) {
  const auto k_count = scenario.devices.size();
  if (alloc.p.size() != k_count) {
    throw std::invalid_argument("offload_bits: power vector size does not match device count");
  }
  const double noise = scenario.config.num_antennas * scenario.consts.noise_power;
  const double bw = scenario.config.bandwidth;
  const auto g = uplink_gains(uplink, scenario);

  if (access == MultipleAccess::tdma) {
    const double slot = offload_time(alloc, access, static_cast<int>(k_count));
    double bits = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) bits += slot * bw * std::log2(1.0 + alloc.p[k] * g[k] / noise);
    return bits;
  }

  double received = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) received += alloc.p[k] * g[k];
  return bw * alloc.tau2 * std::log2(1.0 + received / noise);
}

double evaluate_capacity(const SolutionState& state, const Scenario& scenario) {
  double bits = offload_bits(state.uplink, state.alloc, scenario, state.access);
  for (double f : state.alloc.f) bits += local_compute(f, scenario.config).bits;
  return bits;
}

namespace {

double range_slack(const PaLayout& layout, double range) {
  double slack = std::numeric_limits<double>::infinity();
  for (double x : layout.xs) slack = std::min({slack, x, range - x});
  return slack;
}

double spacing_slack(const PaLayout& layout, double delta) {
  const double sep = min_separation(layout.xs);
  return std::isinf(sep) ? std::numeric_limits<double>::infinity() : sep - delta;
}

}  // namespace

FeasibilityReport check_feasibility(const SolutionState& state, const Scenario& scenario, double tol) {
  const auto& cfg = scenario.config;
  const auto& alloc = state.alloc;
  const int k_count = scenario.num_devices();
  FeasibilityReport r;

  r.uplink_spacing = spacing_slack(state.uplink, cfg.min_spacing);
  r.downlink_spacing = spacing_slack(state.downlink, cfg.min_spacing);
  r.uplink_range = range_slack(state.uplink, cfg.area_x);
  r.downlink_range = range_slack(state.downlink, cfg.area_x);
  r.radiation_norm = 1.0 - state.w.norm_squared();
  r.time_budget = cfg.frame_duration - alloc.tau1 - alloc.tau2;

  r.nonnegativity = std::min(alloc.tau1, alloc.tau2);
  for (double p : alloc.p) r.nonnegativity = std::min(r.nonnegativity, p);
  for (double f : alloc.f) r.nonnegativity = std::min(r.nonnegativity, f);

  const auto harvested = harvested_energies(state, scenario);
  const double t_off = offload_time(alloc, state.access, k_count);
  std::vector<double> energy_scale(static_cast<std::size_t>(k_count));
  r.energy.resize(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double p = ku < alloc.p.size() ? alloc.p[ku] : 0.0;
    const double f = ku < alloc.f.size() ? alloc.f[ku] : 0.0;
    const double spent = p * t_off + local_compute(f, cfg).joules;
    r.energy[ku] = harvested[ku] - spent;
    energy_scale[ku] = std::max(harvested[ku], spent);
  }

  auto check = [&](bool ok, const char* name) {
    if (!ok && r.violation.empty()) r.violation = name;
  };
  const double spacing_scale = cfg.min_spacing > 0.0 ? cfg.min_spacing : 1.0;
  check(state.uplink.size() == static_cast<std::size_t>(cfg.num_antennas) &&
            state.downlink.size() == static_cast<std::size_t>(cfg.num_antennas) &&
            state.w.size() == static_cast<std::size_t>(cfg.num_antennas),
        "antenna count");
  check(alloc.p.size() == static_cast<std::size_t>(k_count) && alloc.f.size() == static_cast<std::size_t>(k_count),
        "device count");
  check(r.downlink_spacing >= -tol * spacing_scale, "downlink spacing");
  check(r.uplink_spacing >= -tol * spacing_scale, "uplink spacing");
  check(r.uplink_range >= -tol * cfg.area_x && r.downlink_range >= -tol * cfg.area_x, "waveguide range");
  for (int k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    check(r.energy[ku] >= -tol * energy_scale[ku], "energy budget");
  }
  check(r.radiation_norm >= -tol, "radiation norm");
  check(r.time_budget >= -tol * cfg.frame_duration, "time budget");
  check(r.nonnegativity >= 0.0, "non-negativity");
  r.feasible = r.violation.empty();
  return r;
}

void evaluate(SolutionState& state, const Scenario& scenario, double tol) {
  state.objective = evaluate_capacity(state, scenario);
  state.feasibility = check_feasibility(state, scenario, tol);
}

}  // namespace pamec
