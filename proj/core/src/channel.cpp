#include "pamec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pamec {

RadiationVector RadiationVector::uniform(int num_antennas) {
  RadiationVector w;
  w.alpha = Eigen::VectorXd::Constant(num_antennas, 1.0 / std::sqrt(static_cast<double>(num_antennas)));
  return w;
}

double antenna_distance(double antenna_x, const Position& device, double waveguide_height) {
  const double dx = device.x - antenna_x;
  const double dy = device.y;
  const double dz = device.z - waveguide_height;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace {

// Unit-radiation channel of one antenna; the in-waveguide path is |x_m|.
ComplexGain unit_coeff(double antenna_x, const Position& device, double waveguide_height,
                       const ChannelConstants& consts) {
  const double r = antenna_distance(antenna_x, device, waveguide_height);
  const double phase = -2.0 * kPi * (r / consts.lambda_free + std::abs(antenna_x) / consts.lambda_guided);
  return std::polar(consts.eta / r, phase);
}

}  // namespace

ComplexGain downlink_coeff(const PaLayout& layout, std::size_t m, const Position& device, double alpha_m,
                           double waveguide_height, const ChannelConstants& consts) {
  return alpha_m * unit_coeff(layout.xs.at(m), device, waveguide_height, consts);
}

ComplexGain uplink_coeff(const PaLayout& layout, std::size_t m, const Position& device,
                         double waveguide_height, const ChannelConstants& consts) {
  return unit_coeff(layout.xs.at(m), device, waveguide_height, consts);
}

double aggregate_downlink_gain(std::span<const double> xs, const RadiationVector& w, const Position& device,
                               double waveguide_height, const ChannelConstants& consts) {
  if (xs.size() != w.size()) {
    throw std::invalid_argument("aggregate_downlink_gain: layout has " + std::to_string(xs.size()) +
                                " antennas but radiation vector has " + std::to_string(w.size()));
  }
  ComplexGain sum{0.0, 0.0};
  for (std::size_t m = 0; m < xs.size(); ++m) {
    sum += w.alpha[static_cast<Eigen::Index>(m)] * unit_coeff(xs[m], device, waveguide_height, consts);
  }
  return std::norm(sum);
}

double aggregate_uplink_gain(std::span<const double> xs, const Position& device, double waveguide_height,
                             const ChannelConstants& consts) {
  ComplexGain sum{0.0, 0.0};
  for (double x : xs) sum += unit_coeff(x, device, waveguide_height, consts);
  return std::norm(sum);
}

double aggregate_downlink_gain(const PaLayout& layout, const RadiationVector& w, const Position& device,
                               double waveguide_height, const ChannelConstants& consts) {
  return aggregate_downlink_gain(std::span<const double>(layout.xs), w, device, waveguide_height, consts);
}

double aggregate_uplink_gain(const PaLayout& layout, const Position& device, double waveguide_height,
                             const ChannelConstants& consts) {
  return aggregate_uplink_gain(std::span<const double>(layout.xs), device, waveguide_height, consts);
}

double min_separation(std::span<const double> xs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) best = std::min(best, std::abs(xs[i] - xs[j]));
  }
  return best;
}

bool spacing_feasible(std::span<const double> xs, double delta, double range, double tol) {
  for (double x : xs) {
    if (!(x >= -tol && x <= range + tol)) return false;
  }
  return min_separation(xs) >= delta - tol;
}

}  // namespace pamec
