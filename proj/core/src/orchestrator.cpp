#include "pamec/orchestrator.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>

#include "pamec/radiation_power.hpp"
#include "pamec/time_alloc.hpp"

namespace pamec {

namespace {

constexpr std::array<SchemeId, 4> kSchemes = {SchemeId::proposed, SchemeId::conventional_mimo, SchemeId::fixed_pa,
                                              SchemeId::tdma};

}  // namespace

std::string_view to_string(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::proposed:
      return "proposed";
    case SchemeId::conventional_mimo:
      return "conventional_mimo";
    case SchemeId::fixed_pa:
      return "fixed_pa";
    case SchemeId::tdma:
      return "tdma";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  for (SchemeId s : kSchemes) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) +
                    "' (expected proposed, conventional_mimo, fixed_pa or tdma)");
}

std::span<const SchemeId> all_schemes() { return kSchemes; }

std::string_view to_string(Block block) {
  switch (block) {
    case Block::init:
      return "init";
    case Block::uplink_pso:
      return "uplink_pso";
    case Block::downlink_pso:
      return "downlink_pso";
    case Block::radiation_power:
      return "radiation_power";
    case Block::time_alloc:
      return "time_alloc";
  }
  return "unknown";
}

std::vector<double> AoTrace::objectives() const {
  std::vector<double> out;
  if (!blocks.empty()) out.push_back(blocks.front().objective);
  for (const auto& o : outer) out.push_back(o.objective);
  return out;
}

PaLayout fixed_pa_layout(const ScenarioConfig& config) {
  const int m_count = config.num_antennas;
  PaLayout layout;
  layout.xs.reserve(static_cast<std::size_t>(m_count));
  for (int m = 1; m <= m_count; ++m) layout.xs.push_back((2.0 * m - 1.0) * config.area_x / (2.0 * m_count));
  return layout;
}

PaLayout conventional_mimo_layout(const ScenarioConfig& config, const ChannelConstants& consts) {
  PaLayout layout;
  const double half = consts.lambda_free / 2.0;
  for (int m = 0; m < config.num_antennas; ++m) layout.xs.push_back(m * half);
  return layout;
}

SolutionState init_solution(const Scenario& scenario, MultipleAccess access, std::optional<PaLayout> layout) {
  const auto& cfg = scenario.config;
  if (!layout && cfg.num_antennas * cfg.min_spacing > cfg.area_x) {
    throw ConfigError("num_antennas * min_spacing exceeds area_x; the uniform layout violates the spacing");
  }
  SolutionState s;
  s.uplink = layout ? *layout : fixed_pa_layout(cfg);
  s.downlink = s.uplink;
  s.w = RadiationVector::uniform(cfg.num_antennas);
  s.access = access;
  const auto k_count = static_cast<std::size_t>(scenario.num_devices());
  const double t = cfg.frame_duration;
  if (access == MultipleAccess::tdma) {
    s.alloc.tau1 = t / static_cast<double>(k_count + 1);
    s.alloc.tau2 = t - s.alloc.tau1;
  } else {
    s.alloc.tau1 = t / 2.0;
    s.alloc.tau2 = t - s.alloc.tau1;
  }
  s.alloc.f.assign(k_count, 0.0);
  s.alloc.p = recover_powers(s, scenario).p;
  evaluate(s, scenario);
  return s;
}

namespace {

class AlternatingRun {
 public:
  AlternatingRun(const Scenario& scenario, const AoOptions& options, Rng& rng)
      : scen_(scenario), opt_(options), rng_(rng) {}

  AoResult run(SolutionState init) {
    evaluate(init, scen_, opt_.feasibility_tol);
    if (!init.feasibility.feasible) {
      throw InfeasibleError("initial solution is infeasible: " + init.feasibility.violation);
    }
    state_ = std::move(init);
    trace_.blocks.push_back({0, Block::init, state_.objective, 0.0, true, true, state_});

    for (int outer = 1; outer <= opt_.max_outer; ++outer) {
      const auto started = std::chrono::steady_clock::now();
      const double before = state_.objective;
      OuterRecord rec;
      rec.outer_iter = outer;

      if (opt_.optimize_placement) {
        rec.uplink_pso_trace = uplink_block(outer);
        rec.downlink_pso_trace = downlink_block(outer);
      }
      rec.radiation_trace = radiation_block(outer);
      time_block(outer);

      rec.objective = state_.objective;
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      trace_.outer.push_back(std::move(rec));

      const double scale = std::max(std::abs(before), 1e-300);
      if ((state_.objective - before) / scale < opt_.outer_tol) {
        trace_.converged = true;
        break;
      }
    }
    return {state_, std::move(trace_)};
  }

 private:
  void offer(int outer, Block block, SolutionState candidate) {
    evaluate(candidate, scen_, opt_.feasibility_tol);
    const bool feasible = candidate.feasibility.feasible;
    const bool improves = candidate.objective >= state_.objective;
    const bool accepted = feasible && (improves || !opt_.guard);
    const double before = state_.objective;
    if (accepted) state_ = std::move(candidate);
    trace_.blocks.push_back({outer, block, state_.objective, state_.objective - before, feasible, accepted, state_});
  }

  PaLayout maybe_override(Block block, PaLayout layout) const {
    return opt_.placement_override ? opt_.placement_override(block, layout) : layout;
  }

  void repower(SolutionState& s) const { s.alloc.p = recover_powers(s, scen_).p; }

  std::vector<double> uplink_block(int outer) {
    const std::vector<double> powers = state_.alloc.p;
    Fitness fit = [&](std::span<const double> xs) { return uplink_fitness(xs, scen_, powers); };
    const std::vector<std::vector<double>> seeds{state_.uplink.xs};
    PsoResult res = run_pso(fit, placement_bounds(scen_.config), opt_.pso, rng_, seeds);

    SolutionState cand = state_;
    cand.uplink = maybe_override(Block::uplink_pso, PaLayout{res.best});
    offer(outer, Block::uplink_pso, std::move(cand));
    return std::move(res.trace);
  }

  std::vector<double> downlink_block(int outer) {
    const auto g = uplink_gains(state_.uplink, scen_);
    const RadiationVector w = state_.w;
    const double tau1 = state_.alloc.tau1;
    Fitness fit = [&](std::span<const double> xs) { return downlink_fitness(xs, scen_, w, g, tau1); };
    const std::vector<std::vector<double>> seeds{state_.downlink.xs};
    PsoResult res = run_pso(fit, placement_bounds(scen_.config), opt_.pso, rng_, seeds);

    // A new downlink layout changes E_k; powers follow from the energy
    // equality before the candidate is judged.
    SolutionState cand = state_;
    cand.downlink = maybe_override(Block::downlink_pso, PaLayout{res.best});
    repower(cand);
    offer(outer, Block::downlink_pso, std::move(cand));
    return std::move(res.trace);
  }

  std::vector<double> radiation_block(int outer) {
    const auto g = uplink_gains(state_.uplink, scen_);
    const auto chan = build_effective_channels(state_.downlink, scen_, g, state_.alloc.tau1);
    RadiationResult res = optimize_radiation(chan, state_.w, opt_.sca_max_iters, opt_.sca_tol);

    SolutionState cand = state_;
    cand.w = res.w;
    repower(cand);
    offer(outer, Block::radiation_power, std::move(cand));
    return std::move(res.trace);
  }

  void time_block(int outer) {
    SolutionState cand = state_;
    if (state_.access == MultipleAccess::noma) {
      const auto prob = make_time_alloc_problem(state_, scen_);
      const auto res = solve_time_alloc(prob, 0.0, state_.alloc.tau2);
      cand.alloc.tau1 = res.tau1;
      cand.alloc.tau2 = res.tau2;
      cand.alloc.f = res.f;
    } else {
      // TDMA slots are fixed; each device splits its energy between its
      // offload slot and local computing.
      const auto harvested = harvested_energies(state_, scen_);
      const auto g = uplink_gains(state_.uplink, scen_);
      const double slot = offload_time(state_.alloc, state_.access, scen_.num_devices());
      for (std::size_t k = 0; k < harvested.size(); ++k) {
        const auto split = split_tdma_energy(harvested[k], g[k], slot, scen_);
        cand.alloc.p[k] = split.power;
        cand.alloc.f[k] = split.frequency;
      }
    }
    offer(outer, Block::time_alloc, std::move(cand));
  }

  const Scenario& scen_;
  const AoOptions& opt_;
  Rng& rng_;
  SolutionState state_;
  AoTrace trace_;
};

}  // namespace

AoResult run_alternating(const Scenario& scenario, SolutionState init, const AoOptions& options, Rng& rng) {
  AlternatingRun run(scenario, options, rng);
  return run.run(std::move(init));
}

AoResult run_baseline(SchemeId scheme, const Scenario& scenario, const AoOptions& options, std::uint64_t seed) {
  Rng rng = solver_rng(seed);
  AoOptions opt = options;
  switch (scheme) {
    case SchemeId::fixed_pa: {
      opt.optimize_placement = false;
      return run_alternating(scenario, init_solution(scenario), opt, rng);
    }
    case SchemeId::conventional_mimo: {
      opt.optimize_placement = false;
      const auto layout = conventional_mimo_layout(scenario.config, scenario.consts);
      return run_alternating(scenario, init_solution(scenario, MultipleAccess::noma, layout), opt, rng);
    }
    case SchemeId::tdma:
      return run_alternating(scenario, init_solution(scenario, MultipleAccess::tdma), opt, rng);
    case SchemeId::proposed: {
      AoOptions fixed = options;
      fixed.optimize_placement = false;
      AoResult warm = run_alternating(scenario, init_solution(scenario), fixed, rng);
      return run_alternating(scenario, std::move(warm.state), opt, rng);
    }
  }
  throw ConfigError("unhandled scheme");
}

void write_trace_csv(const AoTrace& trace, std::ostream& out) {
  out << "outer_iter,objective_bits,block,delta_bits,feasible\n";
  char obj[64];
  char delta[64];
  for (const auto& b : trace.blocks) {
    std::snprintf(obj, sizeof(obj), "%.17g", b.objective);
    std::snprintf(delta, sizeof(delta), "%.17g", b.delta);
    out << b.outer_iter << ',' << obj << ',' << to_string(b.block) << ',' << delta << ','
        << (b.state.feasibility.feasible ? 1 : 0) << '\n';
  }
}

}  // namespace pamec
