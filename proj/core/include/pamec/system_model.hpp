#pragma once

#include <string>
#include <vector>

#include "pamec/channel.hpp"
#include "pamec/scenario.hpp"

namespace pamec {

/// Relative tolerance applied to every constraint slack.
inline constexpr double kFeasibilityTol = 1e-9;

/// NOMA: all devices offload simultaneously for tau2 (sum-rate model).
/// TDMA: tau2 is split into K equal per-device slots.
enum class MultipleAccess { noma, tdma };

struct ResourceAllocation {
  std::vector<double> p;  // W
  double tau1 = 0.0;      // s, downlink WPT
  double tau2 = 0.0;      // s, uplink offloading
  std::vector<double> f;  // cycles/s
};

/// Signed slack of each constraint of the joint problem; >= 0 means satisfied.
struct FeasibilityReport {
  double uplink_spacing = 0.0;    // min separation - delta
  double downlink_spacing = 0.0;
  double uplink_range = 0.0;      // min over m of min(x_m, D_x - x_m)
  double downlink_range = 0.0;
  std::vector<double> energy;     // E_k - p_k t_k - e_k
  double radiation_norm = 0.0;    // 1 - sum(alpha^2)
  double time_budget = 0.0;       // T - tau1 - tau2
  double nonnegativity = 0.0;     // min over p, f, tau1, tau2
  bool feasible = false;
  std::string violation;          // first violated constraint, empty if feasible
};

struct SolutionState {
  PaLayout uplink;
  PaLayout downlink;
  RadiationVector w;
  ResourceAllocation alloc;
  MultipleAccess access = MultipleAccess::noma;
  double objective = 0.0;  // bits per frame
  FeasibilityReport feasibility;
};

struct LocalCompute {
  double bits = 0.0;
  double joules = 0.0;
};

/// E_k = beta tau1 P_B |sum_m h^D_mk|^2.
double harvested_energy(const PaLayout& downlink, const RadiationVector& w, const Position& device,
                        double tau1, const ScenarioConfig& config, const ChannelConstants& consts);

/// C^L_k = T f / D and e_k = T kappa f^3.
LocalCompute local_compute(double f, const ScenarioConfig& config);

/// g_k for every device.
std::vector<double> uplink_gains(const PaLayout& uplink, const Scenario& scenario);
/// |sum_m h^D_mk|^2 for every device.
std::vector<double> downlink_gains(const PaLayout& downlink, const RadiationVector& w,
                                   const Scenario& scenario);
std::vector<double> harvested_energies(const SolutionState& state, const Scenario& scenario);

/// Transmission time each device spends offloading: tau2 (NOMA) or tau2/K (TDMA).
double offload_time(const ResourceAllocation& alloc, MultipleAccess access, int num_devices);

/// B tau2 log2(1 + sum_k p_k g_k / (M sigma^2)) for NOMA; for TDMA the
/// per-slot sum over devices of (tau2/K) B log2(1 + p_k g_k / (M sigma^2)).
double offload_bits(const PaLayout& uplink, const ResourceAllocation& alloc, const Scenario& scenario,
                    MultipleAccess access = MultipleAccess::noma);

/// C^sum = C^off + sum_k C^L_k.
double evaluate_capacity(const SolutionState& state, const Scenario& scenario);

FeasibilityReport check_feasibility(const SolutionState& state, const Scenario& scenario,
                                    double tol = kFeasibilityTol);

/// Recomputes objective and feasibility of `state` in place.
void evaluate(SolutionState& state, const Scenario& scenario, double tol = kFeasibilityTol);

}  // namespace pamec
