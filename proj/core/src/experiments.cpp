#include "pamec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace pamec {

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::bs_power_dbm:
      return "bs_power_dbm";
    case SweepParam::num_antennas:
      return "num_antennas";
    case SweepParam::bandwidth:
      return "bandwidth";
  }
  return "unknown";
}

SweepParam parse_sweep_param(std::string_view name) {
  for (SweepParam p : {SweepParam::bs_power_dbm, SweepParam::num_antennas, SweepParam::bandwidth}) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected bs_power_dbm, num_antennas or bandwidth)");
}

ScenarioConfig apply_sweep_value(ScenarioConfig base, SweepParam param, double value) {
  switch (param) {
    case SweepParam::bs_power_dbm:
      base.bs_power = dbm_to_watts(value);
      break;
    case SweepParam::num_antennas:
      if (value != std::floor(value) || value < 1.0) {
        throw ConfigError("num_antennas sweep value must be a positive integer");
      }
      base.num_antennas = static_cast<int>(value);
      break;
    case SweepParam::bandwidth:
      base.bandwidth = value;
      break;
  }
  validate(base);
  return base;
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  if (spec.schemes.empty()) throw ConfigError("sweep needs at least one scheme");
  if (spec.seeds.empty()) throw ConfigError("sweep needs at least one seed");
}

namespace {

SweepRow run_cell(const ScenarioConfig& base, SweepParam param, double value, SchemeId scheme, std::uint64_t seed,
                  const AoOptions& ao) {
  SweepRow row;
  row.param = param;
  row.value = value;
  row.scheme = scheme;
  row.seed = seed;
  try {
    ScenarioConfig cfg = apply_sweep_value(base, param, value);
    cfg.rng_seed = seed;
    const Scenario scenario = make_scenario(cfg);
    const AoResult res = run_baseline(scheme, scenario, ao, seed);
    row.objective_bits = res.state.objective;
    for (double e : harvested_energies(res.state, scenario)) row.harvested_joules += e;
    row.tau1 = res.state.alloc.tau1;
    row.tau2 = res.state.alloc.tau2;
    row.outer_iters = res.trace.outer_iterations();
    row.convergence = res.trace.objectives();
  } catch (const InfeasibleError& e) {
    row.error = e.what();
    row.infeasible = true;
    row.objective_bits = row.harvested_joules = row.tau1 = row.tau2 = std::nan("");
  } catch (const std::exception& e) {
    row.error = e.what();
    row.objective_bits = row.harvested_joules = row.tau1 = row.tau2 = std::nan("");
  }
  return row;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base, const SweepOptions& options) {
  validate(spec);
  struct Cell {
    double value;
    SchemeId scheme;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double v : spec.values) {
    for (SchemeId s : spec.schemes) {
      for (std::uint64_t seed : spec.seeds) cells.push_back({v, s, seed});
    }
  }

  SweepTable table;
  table.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& c = cells[i];
      table.rows[i] = run_cell(base, spec.param, c.value, c.scheme, c.seed, options.ao);
    }
  };

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return table;
}

std::vector<MeanRow> aggregate_means(const SweepTable& table) {
  std::vector<MeanRow> out;
  for (const auto& r : table.rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const MeanRow& m) { return m.value == r.value && m.scheme == r.scheme; });
    if (it == out.end()) {
      out.push_back({r.param, r.value, r.scheme, 0.0, 0.0, 0, 0});
      it = out.end() - 1;
    }
    if (!r.error.empty()) {
      ++it->failures;
      continue;
    }
    ++it->cells;
    it->objective_bits += r.objective_bits;
    it->harvested_joules += r.harvested_joules;
  }
  for (auto& m : out) {
    if (m.cells > 0) {
      m.objective_bits /= m.cells;
      m.harvested_joules /= m.cells;
    } else {
      m.objective_bits = m.harvested_joules = std::nan("");
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  if (table.rows.empty()) throw ConfigError("cannot write an empty sweep table");
  out << "sweep_param,value,scheme,seed,objective_bits,harvested_joules,tau1,tau2,outer_iters\n";
  for (const auto& r : table.rows) {
    out << to_string(r.param) << ',' << format_double(r.value) << ',' << to_string(r.scheme) << ',' << r.seed << ','
        << format_double(r.objective_bits) << ',' << format_double(r.harvested_joules) << ','
        << format_double(r.tau1) << ',' << format_double(r.tau2) << ',' << r.outer_iters << '\n';
  }
}

void emit_csv(const SweepTable& table, const std::filesystem::path& path) {
  if (table.rows.empty()) throw ConfigError("cannot write an empty sweep table");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_means_csv(const std::vector<MeanRow>& means, std::ostream& out) {
  out << "sweep_param,value,scheme,mean_objective_bits,mean_harvested_joules,seeds,failures\n";
  for (const auto& m : means) {
    out << to_string(m.param) << ',' << format_double(m.value) << ',' << to_string(m.scheme) << ','
        << format_double(m.objective_bits) << ',' << format_double(m.harvested_joules) << ',' << m.cells << ','
        << m.failures << '\n';
  }
}

}  // namespace pamec
