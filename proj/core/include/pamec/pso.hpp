#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "pamec/scenario.hpp"

namespace pamec {

struct RadiationVector;

/// Finite stand-in for an infinite penalty; keeps fitness values totally ordered.
inline constexpr double kPenalty = 1e30;

struct PsoParams {
  int num_particles = 50;
  double inertia = 0.72;
  double cognitive = 1.49;
  double social = 1.49;
  int max_iters = 200;
  double velocity_clamp = 0.0;  // m/iteration; <= 0 selects (upper - lower) / 4
  int num_starts = 4;
  int stall_iters = 20;         // stop when gbest improves < stall_tol (relative) over this window
  double stall_tol = 1e-8;
  int max_init_attempts = 1000;
};

/// Box [lower, upper]^dims with pairwise separation >= min_spacing.
struct SearchBounds {
  std::size_t dims = 1;
  double lower = 0.0;
  double upper = 1.0;
  double min_spacing = 0.0;
};

using Fitness = std::function<double(std::span<const double>)>;

/// 0 if `xs` satisfies spacing and range, kPenalty otherwise.
double layout_penalty(std::span<const double> xs, const SearchBounds& bounds);

/// Draws `dims` uniform points, sorts them, then pushes neighbours apart so that
/// the spacing constraint holds; feasible whenever (dims-1) * spacing <= width.
std::vector<double> sample_feasible_layout(const SearchBounds& bounds, Rng& rng);

/// -sum_k p_k g_k(xs) + penalty.
double uplink_fitness(std::span<const double> xs, const Scenario& scenario, std::span<const double> powers);

/// -sum_k g_k beta tau1 P_B |sum_m h^D_mk(xs)|^2 + penalty.
double downlink_fitness(std::span<const double> xs, const Scenario& scenario, const RadiationVector& w,
                        std::span<const double> uplink_gain, double tau1);

SearchBounds placement_bounds(const ScenarioConfig& config);

/// One swarm. Members are public so tests can inspect and steer the dynamics.
class Swarm {
 public:
  Swarm(Fitness fitness, SearchBounds bounds, PsoParams params, Rng& rng);

  /// Samples feasible particles; the first particles are replaced by `seeds`
  /// when those are feasible. Throws InfeasibleError when no sample is feasible.
  void initialize(std::span<const std::vector<double>> seeds = {});

  /// One sweep over all particles: velocity/position update, then pbest and
  /// gbest refresh after each particle.
  void step();

  double velocity_clamp() const { return vmax_; }

  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> pbest;
  std::vector<double> pbest_fitness;
  std::vector<double> fitness;
  std::vector<double> gbest;
  double gbest_fitness = kPenalty;

 private:
  Fitness fitness_fn_;
  SearchBounds bounds_;
  PsoParams params_;
  Rng* rng_;
  double vmax_;
};

struct PsoResult {
  std::vector<double> best;
  double best_fitness = kPenalty;
  std::vector<double> trace;  // best fitness after each iteration, across starts
  int iterations = 0;
};

/// Multi-start PSO; returns the best gbest over all starts. `seeds` are
/// injected into the first start only.
PsoResult run_pso(const Fitness& fitness, const SearchBounds& bounds, const PsoParams& params, Rng& rng,
                  std::span<const std::vector<double>> seeds = {});

/// CSV rows `iteration,gbest_fitness`.
void write_pso_trace_csv(std::span<const double> trace, std::ostream& out);

}  // namespace pamec
