#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pamec {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Raised for invalid configuration values or malformed config files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no point satisfying the placement or energy constraints exists.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Physical and protocol constants of one scenario. Powers are stored in
/// watts; dBm only appears in the config file and CLI.
struct ScenarioConfig {
  double area_x = 30.0;            // m, waveguide length / x-extent of area
  double area_y = 10.0;            // m
  double waveguide_height = 3.0;   // m
  double frame_duration = 1.0;     // s
  int num_devices = 4;
  int num_antennas = 4;
  double bs_power = 19.952623149688797;  // W (43 dBm)
  double noise_psd_dbm_hz = -174.0;
  double bandwidth = 100e6;        // Hz
  double cycles_per_bit = 200.0;
  double chip_kappa = 1e-28;
  double harvest_efficiency = 0.5;
  double carrier_freq = 28e9;      // Hz
  double refractive_index = 1.4;
  double min_spacing = kSpeedOfLight / (2.0 * 28e9);  // m, half wavelength
  std::uint64_t rng_seed = 1;
};

/// Throws ConfigError when an invariant of ScenarioConfig is violated.
void validate(const ScenarioConfig& config);

/// Parses the flat `key = value` format. `#` starts a comment. Keys absent
/// from the input keep their defaults; when `min_spacing` is absent it is set
/// to half the free-space wavelength of the parsed carrier.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);
void write_config(const ScenarioConfig& config, std::ostream& out);

struct ChannelConstants {
  double eta = 0.0;            // c / (4 pi f_c)
  double lambda_free = 0.0;    // c / f_c
  double lambda_guided = 0.0;  // lambda / n_e
  double noise_power = 0.0;    // W over the full bandwidth
};

ChannelConstants derive_constants(const ScenarioConfig& config);

struct DeviceLayout {
  std::vector<Position> positions;

  std::size_t size() const { return positions.size(); }
};

using Rng = std::mt19937_64;

/// Independent streams from one seed: device drops never shift when the
/// solver consumes a different amount of randomness.
Rng device_rng(std::uint64_t seed);
Rng solver_rng(std::uint64_t seed);

DeviceLayout sample_devices(const ScenarioConfig& config);

/// Everything the solvers need about one drop, bundled once.
struct Scenario {
  ScenarioConfig config;
  ChannelConstants consts;
  DeviceLayout devices;

  int num_devices() const { return static_cast<int>(devices.size()); }
  int num_antennas() const { return config.num_antennas; }
};

Scenario make_scenario(const ScenarioConfig& config);
Scenario make_scenario(const ScenarioConfig& config, DeviceLayout devices);

}  // namespace pamec
