// pamec: parameter sweeps and convergence traces for pinching-antenna
// wireless-powered MEC capacity optimisation.
//
//   pamec run --config cfg.txt --sweep bs_power_dbm --values 33,38,43 \
//             --schemes proposed,fixed_pa --seeds 1,2,3 --out sweep.csv
//   pamec trace --config cfg.txt --seed 7 --out trace.csv
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible problem,
// 1 anything else (I/O). A sweep with failed cells still writes its CSV and
// then exits 3 if any cell was infeasible, 2 otherwise.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pamec/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

pamec::ScenarioConfig config_from(const std::string& path) {
  return path.empty() ? pamec::ScenarioConfig{} : pamec::load_config(path);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pinching-antenna wireless-powered MEC capacity optimiser"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  unsigned workers = 0;

  auto* run = app.add_subcommand("run", "Run a parameter sweep and write per-cell CSV");
  std::string sweep_name;
  std::string values_arg;
  std::string schemes_arg = "proposed,conventional_mimo,fixed_pa,tdma";
  std::string seeds_arg;
  std::string means_path;
  run->add_option("--config", config_path, "Scenario config file (defaults used when omitted)");
  run->add_option("--sweep", sweep_name, "bs_power_dbm | num_antennas | bandwidth")->required();
  run->add_option("--values", values_arg, "Comma-separated swept values (dBm, count or Hz)")->required();
  run->add_option("--schemes", schemes_arg, "Comma-separated schemes");
  run->add_option("--seeds", seeds_arg, "Comma-separated device-drop seeds")->required();
  run->add_option("--out", out_path, "Output CSV path")->required();
  run->add_option("--means", means_path, "Optional CSV of seed-averaged results");
  run->add_option("--workers", workers, "Concurrent sweep cells (0 = hardware threads)");

  auto* trace = app.add_subcommand("trace", "Write the convergence trace of one alternating-optimisation run");
  std::uint64_t seed = 1;
  std::string scheme_name = "proposed";
  trace->add_option("--config", config_path, "Scenario config file (defaults used when omitted)");
  trace->add_option("--seed", seed, "Device-drop and solver seed");
  trace->add_option("--out", out_path, "Output CSV path")->required();
  trace->add_option("--scheme", scheme_name, "Scheme; proposed starts cold from the fixed-PA initial point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      pamec::SweepSpec spec;
      spec.param = pamec::parse_sweep_param(sweep_name);
      for (const auto& v : split(values_arg)) spec.values.push_back(std::stod(v));
      for (const auto& s : split(schemes_arg)) spec.schemes.push_back(pamec::parse_scheme(s));
      for (const auto& s : split(seeds_arg)) spec.seeds.push_back(std::stoull(s));
      spec.output = out_path;
      pamec::validate(spec);

      pamec::SweepOptions opts;
      opts.workers = workers;
      const auto table = pamec::run_sweep(spec, config_from(config_path), opts);
      pamec::emit_csv(table, spec.output);
      if (!means_path.empty()) {
        std::ofstream means(means_path);
        if (!means) throw std::runtime_error("cannot open '" + means_path + "' for writing");
        pamec::write_means_csv(pamec::aggregate_means(table), means);
      }
      int failed = 0;
      bool infeasible = false;
      for (const auto& r : table.rows) {
        if (!r.error.empty()) {
          ++failed;
          infeasible = infeasible || r.infeasible;
          std::cerr << "cell " << pamec::to_string(r.scheme) << " value=" << r.value << " seed=" << r.seed
                    << " failed: " << r.error << '\n';
        }
      }
      std::cout << "wrote " << table.rows.size() << " rows to " << spec.output.string();
      if (failed) std::cout << " (" << failed << " failed)";
      std::cout << '\n';
      if (failed) return infeasible ? kExitInfeasible : kExitConfig;
      return 0;
    }

    if (*trace) {
      auto cfg = config_from(config_path);
      cfg.rng_seed = seed;
      const auto scenario = pamec::make_scenario(cfg);
      const auto scheme = pamec::parse_scheme(scheme_name);
      pamec::AoResult res;
      if (scheme == pamec::SchemeId::proposed) {
        pamec::Rng rng = pamec::solver_rng(seed);
        res = pamec::run_alternating(scenario, pamec::init_solution(scenario), pamec::AoOptions{}, rng);
      } else {
        res = pamec::run_baseline(scheme, scenario, pamec::AoOptions{}, seed);
      }
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
      pamec::write_trace_csv(res.trace, out);
      std::cout << "objective " << pamec::format_double(res.state.objective) << " bits after "
                << res.trace.outer_iterations() << " outer iterations\n";
      return 0;
    }
  } catch (const pamec::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pamec::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: bad number (" << e.what() << ")\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
