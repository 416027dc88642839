#include "pamec/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace pamec {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

void validate(const ScenarioConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid configuration: " + what);
  };
  require(c.area_x > 0.0, "area_x must be > 0");
  require(c.area_y > 0.0, "area_y must be > 0");
  require(c.waveguide_height > 0.0, "waveguide_height must be > 0");
  require(c.frame_duration > 0.0, "frame_duration must be > 0");
  require(c.num_devices >= 0, "num_devices must be >= 0");
  require(c.num_antennas >= 1, "num_antennas must be >= 1");
  require(c.bs_power >= 0.0 && std::isfinite(c.bs_power), "bs_power must be finite and >= 0");
  require(std::isfinite(c.noise_psd_dbm_hz), "noise_psd_dbm_hz must be finite");
  require(c.bandwidth > 0.0, "bandwidth must be > 0");
  require(c.cycles_per_bit > 0.0, "cycles_per_bit must be > 0");
  require(c.chip_kappa > 0.0, "chip_kappa must be > 0");
  require(c.harvest_efficiency > 0.0 && c.harvest_efficiency <= 1.0,
          "harvest_efficiency must lie in (0, 1]");
  require(c.carrier_freq > 0.0, "carrier_freq must be > 0");
  require(c.refractive_index >= 1.0, "refractive_index must be >= 1");
  require(c.min_spacing >= 0.0, "min_spacing must be >= 0");
  require((c.num_antennas - 1) * c.min_spacing <= c.area_x,
          "(num_antennas - 1) * min_spacing exceeds area_x; no feasible layout");
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + value + "'");
  }
  if (used != value.size()) throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  if (d != std::floor(d) || std::abs(d) > 1e9) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
  return static_cast<int>(d);
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not an unsigned integer: '" + value + "'");
  }
  if (used != value.size()) throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig c;
  bool spacing_given = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"area_x", [&](auto& k, auto& v) { c.area_x = parse_double(k, v); }},
      {"area_y", [&](auto& k, auto& v) { c.area_y = parse_double(k, v); }},
      {"waveguide_height", [&](auto& k, auto& v) { c.waveguide_height = parse_double(k, v); }},
      {"frame_duration", [&](auto& k, auto& v) { c.frame_duration = parse_double(k, v); }},
      {"num_devices", [&](auto& k, auto& v) { c.num_devices = parse_int(k, v); }},
      {"num_antennas", [&](auto& k, auto& v) { c.num_antennas = parse_int(k, v); }},
      {"bs_power_dbm", [&](auto& k, auto& v) { c.bs_power = dbm_to_watts(parse_double(k, v)); }},
      {"noise_psd_dbm_hz", [&](auto& k, auto& v) { c.noise_psd_dbm_hz = parse_double(k, v); }},
      {"bandwidth", [&](auto& k, auto& v) { c.bandwidth = parse_double(k, v); }},
      {"cycles_per_bit", [&](auto& k, auto& v) { c.cycles_per_bit = parse_double(k, v); }},
      {"chip_kappa", [&](auto& k, auto& v) { c.chip_kappa = parse_double(k, v); }},
      {"harvest_efficiency", [&](auto& k, auto& v) { c.harvest_efficiency = parse_double(k, v); }},
      {"carrier_freq", [&](auto& k, auto& v) { c.carrier_freq = parse_double(k, v); }},
      {"refractive_index", [&](auto& k, auto& v) { c.refractive_index = parse_double(k, v); }},
      {"min_spacing",
       [&](auto& k, auto& v) {
         c.min_spacing = parse_double(k, v);
         spacing_given = true;
       }},
      {"rng_seed", [&](auto& k, auto& v) { c.rng_seed = parse_seed(k, v); }},
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    it->second(key, value);
  }

  if (!spacing_given && c.carrier_freq > 0.0) {
    c.min_spacing = kSpeedOfLight / (2.0 * c.carrier_freq);
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

void write_config(const ScenarioConfig& c, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "area_x = " << c.area_x << '\n'
      << "area_y = " << c.area_y << '\n'
      << "waveguide_height = " << c.waveguide_height << '\n'
      << "frame_duration = " << c.frame_duration << '\n'
      << "num_devices = " << c.num_devices << '\n'
      << "num_antennas = " << c.num_antennas << '\n'
      << "bs_power_dbm = " << watts_to_dbm(c.bs_power) << '\n'
      << "noise_psd_dbm_hz = " << c.noise_psd_dbm_hz << '\n'
      << "bandwidth = " << c.bandwidth << '\n'
      << "cycles_per_bit = " << c.cycles_per_bit << '\n'
      << "chip_kappa = " << c.chip_kappa << '\n'
      << "harvest_efficiency = " << c.harvest_efficiency << '\n'
      << "carrier_freq = " << c.carrier_freq << '\n'
      << "refractive_index = " << c.refractive_index << '\n'
      << "min_spacing = " << c.min_spacing << '\n'
      << "rng_seed = " << c.rng_seed << '\n';
  out.precision(old_precision);
}

ChannelConstants derive_constants(const ScenarioConfig& config) {
  if (!(config.carrier_freq > 0.0)) throw ConfigError("carrier_freq must be > 0");
  if (!(config.bandwidth > 0.0)) throw ConfigError("bandwidth must be > 0");
  ChannelConstants k;
  k.lambda_free = kSpeedOfLight / config.carrier_freq;
  k.eta = k.lambda_free / (4.0 * kPi);
  k.lambda_guided = k.lambda_free / config.refractive_index;
  k.noise_power =
      std::pow(10.0, (config.noise_psd_dbm_hz + 10.0 * std::log10(config.bandwidth) - 30.0) / 10.0);
  return k;
}

Rng device_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x44455643u};
  return Rng(seq);
}

Rng solver_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x50534f31u};
  return Rng(seq);
}

DeviceLayout sample_devices(const ScenarioConfig& config) {
  Rng rng = device_rng(config.rng_seed);
  std::uniform_real_distribution<double> ux(0.0, config.area_x);
  std::uniform_real_distribution<double> uy(0.0, config.area_y);
  DeviceLayout out;
  out.positions.reserve(static_cast<std::size_t>(std::max(config.num_devices, 0)));
  for (int k = 0; k < config.num_devices; ++k) {
    const double x = ux(rng);
    const double y = uy(rng);
    out.positions.push_back({x, y, 0.0});
  }
  return out;
}

Scenario make_scenario(const ScenarioConfig& config) {
  validate(config);
  return Scenario{config, derive_constants(config), sample_devices(config)};
}

Scenario make_scenario(const ScenarioConfig& config, DeviceLayout devices) {
  validate(config);
  return Scenario{config, derive_constants(config), std::move(devices)};
}

}  // namespace pamec
