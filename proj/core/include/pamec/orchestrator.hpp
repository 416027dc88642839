#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pamec/pso.hpp"
#include "pamec/system_model.hpp"

namespace pamec {

enum class SchemeId { proposed, conventional_mimo, fixed_pa, tdma };

std::string_view to_string(SchemeId scheme);
/// Throws ConfigError on an unknown name.
SchemeId parse_scheme(std::string_view name);
std::span<const SchemeId> all_schemes();

/// Blocks of one outer iteration, in execution order.
enum class Block { init, uplink_pso, downlink_pso, radiation_power, time_alloc };

std::string_view to_string(Block block);

/// Replaces the layout a placement block proposes. Test hook for the guard.
using PlacementOverride = std::function<PaLayout(Block, const PaLayout&)>;

struct AoOptions {
  double outer_tol = 1e-6;
  int max_outer = 30;
  PsoParams pso;
  bool optimize_placement = true;
  bool guard = true;  // reject any block result that lowers the objective
  int sca_max_iters = 100;
  double sca_tol = 1e-8;
  double feasibility_tol = kFeasibilityTol;
  PlacementOverride placement_override;
};

struct BlockRecord {
  int outer_iter = 0;
  Block block = Block::init;
  double objective = 0.0;  // objective of the state held after the block
  double delta = 0.0;      // change caused by the block (0 when rejected)
  bool feasible = false;   // feasibility of the block's candidate
  bool accepted = false;
  SolutionState state;     // state held after the block
};

struct OuterRecord {
  int outer_iter = 0;
  double objective = 0.0;
  double seconds = 0.0;
  std::vector<double> uplink_pso_trace;
  std::vector<double> downlink_pso_trace;
  std::vector<double> radiation_trace;
};

struct AoTrace {
  std::vector<BlockRecord> blocks;
  std::vector<OuterRecord> outer;
  bool converged = false;

  int outer_iterations() const { return static_cast<int>(outer.size()); }
  /// Initial objective followed by the objective after each outer iteration.
  std::vector<double> objectives() const;
};

struct AoResult {
  SolutionState state;
  AoTrace trace;
};

/// x_m = (2m - 1) D_x / (2M).
PaLayout fixed_pa_layout(const ScenarioConfig& config);
/// Half-wavelength ULA next to the feed: x_m = (m - 1) lambda / 2.
PaLayout conventional_mimo_layout(const ScenarioConfig& config, const ChannelConstants& consts);

/// Feasible starting point: `layout` (fixed-PA by default) for both phases,
/// uniform w, f = 0, powers from energy recovery. NOMA splits the frame in
/// half; TDMA uses K + 1 equal slots. Throws ConfigError when M * delta > D_x.
SolutionState init_solution(const Scenario& scenario, MultipleAccess access = MultipleAccess::noma,
                            std::optional<PaLayout> layout = std::nullopt);

/// Alternating optimisation: uplink PSO, downlink PSO, radiation SCA with
/// power recovery, then time and CPU frequency. Throws InfeasibleError when
/// `init` is infeasible.
AoResult run_alternating(const Scenario& scenario, SolutionState init, const AoOptions& options, Rng& rng);

/// Runs one scheme on the scenario with solver randomness from `seed`.
/// `proposed` is warm-started from the converged fixed-PA solution.
AoResult run_baseline(SchemeId scheme, const Scenario& scenario, const AoOptions& options, std::uint64_t seed);

/// CSV `outer_iter,objective_bits,block,delta_bits,feasible`, one row per block.
void write_trace_csv(const AoTrace& trace, std::ostream& out);

}  // namespace pamec
