#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "pamec/system_model.hpp"

namespace pamec {

/// Maximises a unimodal (e.g. concave) function on [lo, hi] by golden-section
/// search; returns the arg max. Both endpoints are also compared so that
/// boundary optima are returned exactly.
template <typename F>
double golden_section_maximize(F&& f, double lo, double hi, double tol) {
  if (!(hi > lo)) return lo;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double best_x = 0.5 * (a + b);
  double best_f = f(best_x);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return best_x;
}

/// Fixed data of the time / CPU-frequency subproblem.
struct TimeAllocProblem {
  double offload_rate = 0.0;          // A = B log2(1 + sum p g / (M sigma^2)), bits/s
  std::vector<double> downlink_gain;  // H_k = |sum_m h^D_mk|^2
  std::vector<double> power;          // p_k, W
  double frame = 1.0;                 // T
  double cycles_per_bit = 200.0;      // D
  double kappa = 1e-28;
  double efficiency = 0.5;            // beta
  double bs_power = 1.0;              // P_B, W
};

TimeAllocProblem make_time_alloc_problem(const SolutionState& state, const Scenario& scenario);

/// Largest tau2 at which every device can still pay p_k tau2 from harvested energy.
double max_offload_time(const TimeAllocProblem& prob);

/// f_k(tau2) = ((beta (T - tau2) P_B H_k - p_k tau2)^+ / (T kappa))^{1/3}.
std::vector<double> frequencies_at(const TimeAllocProblem& prob, double tau2);

/// phi(tau2) = A tau2 + (T/D) sum_k f_k(tau2), with tau1 = T - tau2.
double reduced_objective(const TimeAllocProblem& prob, double tau2);

struct TimeAllocResult {
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::vector<double> f;
  double objective = 0.0;
  bool degenerate = false;
};

/// Golden-section search of phi on [0, max_offload_time]. `tol` <= 0 selects
/// 1e-10 T. When `incumbent_tau2` is given and scores at least as well, it is
/// returned instead.
TimeAllocResult solve_time_alloc(const TimeAllocProblem& prob, double tol = 0.0,
                                 std::optional<double> incumbent_tau2 = std::nullopt);

struct TdmaSplit {
  double power = 0.0;
  double frequency = 0.0;
  double bits = 0.0;
};

/// Splits one device's harvested energy between an offload slot of length
/// `slot` and local computing over the frame: maximises
/// slot B log2(1 + p g / (M sigma^2)) + T f / D s.t. p slot + T kappa f^3 <= E.
TdmaSplit split_tdma_energy(double energy, double uplink_gain, double slot, const Scenario& scenario,
                            double tol = 0.0);

}  // namespace pamec
