#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pamec/orchestrator.hpp"

namespace pamec::testing {

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

/// Default scenario with a fixed device layout and small dimensions.
inline Scenario small_scenario(int devices, int antennas, std::uint64_t seed = 1) {
  ScenarioConfig cfg;
  cfg.num_devices = devices;
  cfg.num_antennas = antennas;
  cfg.rng_seed = seed;
  return make_scenario(cfg);
}

/// Random feasible layout for the scenario's config.
inline PaLayout random_layout(const ScenarioConfig& cfg, Rng& rng) {
  return PaLayout{sample_feasible_layout(placement_bounds(cfg), rng)};
}

inline RadiationVector random_unit_w(int m, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  RadiationVector w;
  w.alpha.resize(m);
  for (int i = 0; i < m; ++i) w.alpha[i] = n(rng);
  w.alpha /= w.alpha.norm();
  return w;
}

}  // namespace pamec::testing
