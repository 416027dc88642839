#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pamec/orchestrator.hpp"

namespace pamec {

enum class SweepParam { bs_power_dbm, num_antennas, bandwidth };

std::string_view to_string(SweepParam param);
/// Throws ConfigError on an unknown name.
SweepParam parse_sweep_param(std::string_view name);

/// Returns `base` with the swept parameter set to `value` (dBm, count or Hz).
ScenarioConfig apply_sweep_value(ScenarioConfig base, SweepParam param, double value);

struct SweepSpec {
  SweepParam param = SweepParam::bs_power_dbm;
  std::vector<double> values;
  std::vector<SchemeId> schemes;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output;
};

/// Throws ConfigError when values, schemes or seeds are empty.
void validate(const SweepSpec& spec);

struct SweepRow {
  SweepParam param = SweepParam::bs_power_dbm;
  double value = 0.0;
  SchemeId scheme = SchemeId::proposed;
  std::uint64_t seed = 0;
  double objective_bits = 0.0;
  double harvested_joules = 0.0;  // sum_k E_k of the final state
  double tau1 = 0.0;
  double tau2 = 0.0;
  int outer_iters = 0;
  std::vector<double> convergence;  // objective after each outer iteration
  std::string error;                // non-empty when the cell failed
  bool infeasible = false;          // failure was an InfeasibleError
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  AoOptions ao;
  unsigned workers = 0;  // 0 selects std::thread::hardware_concurrency()
};

/// Runs every (value, scheme, seed) cell. Device drops depend only on the
/// seed, so all schemes and swept values see the same devices. Rows come
/// back in (value, scheme, seed) order regardless of worker scheduling.
SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base, const SweepOptions& options = {});

struct MeanRow {
  SweepParam param = SweepParam::bs_power_dbm;
  double value = 0.0;
  SchemeId scheme = SchemeId::proposed;
  double objective_bits = 0.0;
  double harvested_joules = 0.0;
  int cells = 0;
  int failures = 0;
};

/// Mean over successful seeds per (value, scheme), in first-seen order.
std::vector<MeanRow> aggregate_means(const SweepTable& table);

/// Columns `sweep_param,value,scheme,seed,objective_bits,harvested_joules,tau1,tau2,outer_iters`,
/// numbers printed with 17 significant digits. Throws ConfigError on an empty table.
void write_csv(const SweepTable& table, std::ostream& out);
/// Throws std::runtime_error when `path` cannot be written.
void emit_csv(const SweepTable& table, const std::filesystem::path& path);

void write_means_csv(const std::vector<MeanRow>& means, std::ostream& out);

std::string format_double(double v);

}  // namespace pamec
