#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pamec/scenario.hpp"

namespace pamec {

using ComplexGain = std::complex<double>;

/// Pinching-antenna x-coordinates along a waveguide that runs parallel to the
/// x-axis at height d, fed at the origin.
struct PaLayout {
  std::vector<double> xs;

  std::size_t size() const { return xs.size(); }
};

/// Real radiation factors alpha_m, one per antenna, with sum(alpha^2) <= 1.
struct RadiationVector {
  Eigen::VectorXd alpha;

  std::size_t size() const { return static_cast<std::size_t>(alpha.size()); }
  double norm_squared() const { return alpha.squaredNorm(); }

  static RadiationVector uniform(int num_antennas);
};

/// Free-space distance between device and antenna m of the layout.
double antenna_distance(double antenna_x, const Position& device, double waveguide_height);

/// h^D_mk: (eta * alpha / r) e^{-j 2pi r / lambda} e^{-j 2pi x_m / lambda_g}.
ComplexGain downlink_coeff(const PaLayout& layout, std::size_t m, const Position& device,
                           double alpha_m, double waveguide_height, const ChannelConstants& consts);

/// h^U_mk: the downlink law with unit radiation factor.
ComplexGain uplink_coeff(const PaLayout& layout, std::size_t m, const Position& device,
                         double waveguide_height, const ChannelConstants& consts);

/// |sum_m h^D_mk|^2. Throws std::invalid_argument on a size mismatch.
double aggregate_downlink_gain(const PaLayout& layout, const RadiationVector& w, const Position& device,
                               double waveguide_height, const ChannelConstants& consts);

/// g_k = |sum_m h^U_mk|^2.
double aggregate_uplink_gain(const PaLayout& layout, const Position& device, double waveguide_height,
                             const ChannelConstants& consts);

// Allocation-free forms over raw coordinates, used by the placement search.
double aggregate_downlink_gain(std::span<const double> xs, const RadiationVector& w, const Position& device,
                               double waveguide_height, const ChannelConstants& consts);
double aggregate_uplink_gain(std::span<const double> xs, const Position& device, double waveguide_height,
                             const ChannelConstants& consts);

/// True iff every pairwise separation is >= delta - tol and every coordinate
/// lies in [-tol, range + tol].
bool spacing_feasible(std::span<const double> xs, double delta, double range, double tol = 0.0);
inline bool spacing_feasible(const PaLayout& layout, double delta, double range, double tol = 0.0) {
  return spacing_feasible(std::span<const double>(layout.xs), delta, range, tol);
}

/// Smallest pairwise separation, +inf for fewer than two antennas.
double min_separation(std::span<const double> xs);

}  // namespace pamec
