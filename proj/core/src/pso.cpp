#include "pamec/pso.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pamec/channel.hpp"

namespace pamec {

double layout_penalty(std::span<const double> xs, const SearchBounds& bounds) {
  for (double x : xs) {
    if (!(x >= bounds.lower && x <= bounds.upper)) return kPenalty;
  }
  return min_separation(xs) >= bounds.min_spacing ? 0.0 : kPenalty;
}

std::vector<double> sample_feasible_layout(const SearchBounds& bounds, Rng& rng) {
  std::uniform_real_distribution<double> u(bounds.lower, bounds.upper);
  std::vector<double> xs(bounds.dims);
  for (double& x : xs) x = u(rng);
  std::sort(xs.begin(), xs.end());
  if (xs.empty()) return xs;

  // (a + delta) - a can round below delta; step by ulps until the exact
  // separation test used by layout_penalty holds.
  const double delta = bounds.min_spacing;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] - xs[i - 1] >= delta) continue;
    xs[i] = xs[i - 1] + delta;
    while (xs[i] - xs[i - 1] < delta) xs[i] = std::nextafter(xs[i], HUGE_VAL);
  }
  if (xs.back() > bounds.upper) {
    xs.back() = bounds.upper;
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
      if (xs[i + 1] - xs[i] >= delta) continue;
      xs[i] = xs[i + 1] - delta;
      while (xs[i + 1] - xs[i] < delta) xs[i] = std::nextafter(xs[i], -HUGE_VAL);
    }
  }
  // The backward pass can overshoot the lower bound by rounding only.
  xs.front() = std::max(xs.front(), bounds.lower);
  std::shuffle(xs.begin(), xs.end(), rng);
  return xs;
}

double uplink_fitness(std::span<const double> xs, const Scenario& scenario, std::span<const double> powers) {
  const double penalty = layout_penalty(xs, placement_bounds(scenario.config));
  if (penalty > 0.0) return penalty;
  double value = 0.0;
  for (std::size_t k = 0; k < scenario.devices.size(); ++k) {
    if (powers[k] == 0.0) continue;
    value += powers[k] * aggregate_uplink_gain(xs, scenario.devices.positions[k],
                                               scenario.config.waveguide_height, scenario.consts);
  }
  return -value;
}

double downlink_fitness(std::span<const double> xs, const Scenario& scenario, const RadiationVector& w,
                        std::span<const double> uplink_gain, double tau1) {
  const double penalty = layout_penalty(xs, placement_bounds(scenario.config));
  if (penalty > 0.0) return penalty;
  const auto& cfg = scenario.config;
  const double scale = cfg.harvest_efficiency * tau1 * cfg.bs_power;
  double value = 0.0;
  for (std::size_t k = 0; k < scenario.devices.size(); ++k) {
    if (uplink_gain[k] == 0.0) continue;
    value += uplink_gain[k] * scale *
             aggregate_downlink_gain(xs, w, scenario.devices.positions[k], cfg.waveguide_height, scenario.consts);
  }
  return -value;
}

SearchBounds placement_bounds(const ScenarioConfig& config) {
  return {static_cast<std::size_t>(config.num_antennas), 0.0, config.area_x, config.min_spacing};
}

Swarm::Swarm(Fitness fitness, SearchBounds bounds, PsoParams params, Rng& rng)
    : fitness_fn_(std::move(fitness)), bounds_(bounds), params_(params), rng_(&rng) {
  vmax_ = params_.velocity_clamp > 0.0 ? params_.velocity_clamp : (bounds_.upper - bounds_.lower) / 4.0;
}

void Swarm::initialize(std::span<const std::vector<double>> seeds) {
  const auto n = static_cast<std::size_t>(std::max(params_.num_particles, 1));
  positions.assign(n, {});
  velocities.assign(n, std::vector<double>(bounds_.dims, 0.0));
  fitness.assign(n, kPenalty);

  std::uniform_real_distribution<double> uv(-vmax_, vmax_);
  std::size_t seeded = 0;
  for (const auto& s : seeds) {
    if (seeded == n) break;
    if (s.size() != bounds_.dims || layout_penalty(s, bounds_) > 0.0) continue;
    positions[seeded] = s;
    fitness[seeded] = fitness_fn_(positions[seeded]);
    ++seeded;
  }

  bool any_feasible = std::any_of(fitness.begin(), fitness.begin() + static_cast<std::ptrdiff_t>(seeded),
                                  [](double f) { return f < kPenalty; });
  int attempts = 0;
  for (std::size_t i = seeded; i < n; ++i) {
    do {
      positions[i] = sample_feasible_layout(bounds_, *rng_);
      fitness[i] = fitness_fn_(positions[i]);
      ++attempts;
    } while (!any_feasible && fitness[i] >= kPenalty && attempts < params_.max_init_attempts);
    any_feasible = any_feasible || fitness[i] < kPenalty;
  }
  if (!any_feasible) {
    const auto& probe = positions.back();
    std::string why = "objective penalty";
    for (double x : probe) {
      if (!(x >= bounds_.lower && x <= bounds_.upper)) why = "waveguide range";
    }
    if (min_separation(probe) < bounds_.min_spacing) why = "minimum antenna spacing";
    throw InfeasibleError("PSO initialisation found no feasible particle after " + std::to_string(attempts) +
                          " attempts; blocked by " + why);
  }

  for (auto& v : velocities) {
    for (double& c : v) c = 0.5 * uv(*rng_);
  }
  pbest = positions;
  pbest_fitness = fitness;
  const auto best = static_cast<std::size_t>(
      std::min_element(pbest_fitness.begin(), pbest_fitness.end()) - pbest_fitness.begin());
  gbest = pbest[best];
  gbest_fitness = pbest_fitness[best];
}

void Swarm::step() {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    auto& x = positions[i];
    auto& v = velocities[i];
    for (std::size_t d = 0; d < bounds_.dims; ++d) {
      const double c1 = u01(*rng_);
      const double c2 = u01(*rng_);
      double vd = params_.inertia * v[d] + params_.cognitive * c1 * (pbest[i][d] - x[d]) +
                  params_.social * c2 * (gbest[d] - x[d]);
      v[d] = std::clamp(vd, -vmax_, vmax_);
      x[d] += v[d];
    }
    fitness[i] = fitness_fn_(x);
    if (fitness[i] <= pbest_fitness[i]) {
      pbest[i] = x;
      pbest_fitness[i] = fitness[i];
    }
    if (fitness[i] <= gbest_fitness) {
      gbest = x;
      gbest_fitness = fitness[i];
    }
  }
}

PsoResult run_pso(const Fitness& fitness, const SearchBounds& bounds, const PsoParams& params, Rng& rng,
                  std::span<const std::vector<double>> seeds) {
  PsoResult result;
  const int starts = std::max(params.num_starts, 1);
  for (int s = 0; s < starts; ++s) {
    Swarm swarm(fitness, bounds, params, rng);
    swarm.initialize(s == 0 ? seeds : std::span<const std::vector<double>>{});

    std::vector<double> history{swarm.gbest_fitness};
    auto record = [&](double f) {
      if (f < result.best_fitness || result.best.empty()) {
        result.best_fitness = f;
        result.best = swarm.gbest;
      }
      result.trace.push_back(result.best_fitness);
    };
    record(swarm.gbest_fitness);

    for (int it = 0; it < params.max_iters; ++it) {
      swarm.step();
      ++result.iterations;
      history.push_back(swarm.gbest_fitness);
      record(swarm.gbest_fitness);
      const auto w = static_cast<std::size_t>(std::max(params.stall_iters, 1));
      if (history.size() > w) {
        const double before = history[history.size() - 1 - w];
        const double now = history.back();
        if (before - now <= params.stall_tol * std::abs(before)) break;
      }
    }
  }
  return result;
}

void write_pso_trace_csv(std::span<const double> trace, std::ostream& out) {
  out << "iteration,gbest_fitness\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", trace[i]);
    out << i << ',' << buf << '\n';
  }
}

}  // namespace pamec
