#include <gtest/gtest.h>

#include <random>

#include "pamec/channel.hpp"
#include "test_support.hpp"

using namespace pamec;
using pamec::testing::rel_err;

namespace {

const ChannelConstants kConsts = derive_constants(ScenarioConfig{});
constexpr double kHeight = 3.0;

RadiationVector unit_alpha(int m) {
  RadiationVector w;
  w.alpha = Eigen::VectorXd::Ones(m);
  return w;
}

}  // namespace

TEST(Coefficient, DirectlyBelowAntenna) {
  const PaLayout layout{{5.0}};
  const Position dev{5.0, 0.0, 0.0};
  const auto h = downlink_coeff(layout, 0, dev, 1.0, kHeight, kConsts);
  EXPECT_LT(rel_err(std::abs(h), kConsts.eta / 3.0), 1e-12);
  EXPECT_LT(rel_err(std::abs(h), 2.840e-4), 1e-3);
}

TEST(Coefficient, ZeroAlphaIsZero) {
  const PaLayout layout{{12.0}};
  const auto h = downlink_coeff(layout, 0, {3.0, 4.0, 0.0}, 0.0, kHeight, kConsts);
  EXPECT_EQ(h, ComplexGain(0.0, 0.0));
}

TEST(Coefficient, InverseDistance) {
  const PaLayout layout{{5.0}};
  const auto near = downlink_coeff(layout, 0, {5.0, 0.0, 0.0}, 1.0, kHeight, kConsts);
  const auto far = downlink_coeff(layout, 0, {5.0, std::sqrt(27.0), 0.0}, 1.0, kHeight, kConsts);
  EXPECT_LT(rel_err(std::abs(far) / std::abs(near), 0.5), 1e-12);
}

TEST(Coefficient, PhaseDecomposition) {
  Rng rng(11);
  std::uniform_real_distribution<double> ux(0.0, 30.0);
  std::uniform_real_distribution<double> uy(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const PaLayout layout{{ux(rng)}};
    const Position dev{ux(rng), uy(rng), 0.0};
    const double alpha = 0.7;
    const double r = antenna_distance(layout.xs[0], dev, kHeight);
    const auto h = downlink_coeff(layout, 0, dev, alpha, kHeight, kConsts);
    // Undo both phase terms; what is left is the real amplitude.
    const auto undo = std::polar(1.0, 2.0 * kPi * r / kConsts.lambda_free) *
                      std::polar(1.0, 2.0 * kPi * layout.xs[0] / kConsts.lambda_guided);
    const auto amp = h * undo;
    EXPECT_LT(rel_err(amp.real(), kConsts.eta * alpha / r), 1e-9);
    EXPECT_LT(std::abs(amp.imag()), 1e-9 * amp.real());
  }
}

TEST(Coefficient, FeedPointDevice) {
  const PaLayout layout{{0.0}};
  const auto h = downlink_coeff(layout, 0, {0.0, 0.0, 0.0}, 1.0, kHeight, kConsts);
  const auto want = std::polar(kConsts.eta / kHeight, -2.0 * kPi * kHeight / kConsts.lambda_free);
  EXPECT_LT(std::abs(h - want), 1e-12 * std::abs(want));
}

TEST(Coefficient, UplinkIsUnitAlphaDownlink) {
  Rng rng(3);
  std::uniform_real_distribution<double> ux(0.0, 30.0);
  std::uniform_real_distribution<double> uy(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const PaLayout layout{{ux(rng), ux(rng)}};
    const Position dev{ux(rng), uy(rng), 0.0};
    for (std::size_t m = 0; m < 2; ++m) {
      EXPECT_EQ(uplink_coeff(layout, m, dev, kHeight, kConsts),
                downlink_coeff(layout, m, dev, 1.0, kHeight, kConsts));
    }
  }
}

TEST(Aggregate, SingleAntenna) {
  const PaLayout layout{{8.0}};
  const Position dev{6.0, 2.0, 0.0};
  const auto h = downlink_coeff(layout, 0, dev, 0.6, kHeight, kConsts);
  RadiationVector w;
  w.alpha = Eigen::VectorXd::Constant(1, 0.6);
  EXPECT_LT(rel_err(aggregate_downlink_gain(layout, w, dev, kHeight, kConsts), std::norm(h)), 1e-12);
}

TEST(Aggregate, ZeroRadiation) {
  const PaLayout layout{{1.0, 9.0, 20.0}};
  RadiationVector w;
  w.alpha = Eigen::VectorXd::Zero(3);
  EXPECT_EQ(aggregate_downlink_gain(layout, w, {4.0, 4.0, 0.0}, kHeight, kConsts), 0.0);
}

TEST(Aggregate, UplinkSingleAntennaBelow) {
  const PaLayout layout{{5.0}};
  const double g = aggregate_uplink_gain(layout, {5.0, 0.0, 0.0}, kHeight, kConsts);
  EXPECT_LT(rel_err(g, std::pow(kConsts.eta / 3.0, 2)), 1e-12);
}

TEST(Aggregate, CoherentPair) {
  // Two antennas equidistant from the device and an integer number of guided
  // wavelengths apart add in phase.
  const double sep = 100.0 * kConsts.lambda_guided;
  const PaLayout layout{{10.0 - sep / 2.0, 10.0 + sep / 2.0}};
  const Position dev{10.0, 1.0, 0.0};
  const double single = aggregate_uplink_gain(PaLayout{{layout.xs[0]}}, dev, kHeight, kConsts);
  EXPECT_LT(rel_err(aggregate_uplink_gain(layout, dev, kHeight, kConsts), 4.0 * single), 1e-9);
}

TEST(Aggregate, MatchesDirectSum) {
  Rng rng(8);
  std::uniform_real_distribution<double> ux(0.0, 30.0);
  std::uniform_real_distribution<double> uy(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const PaLayout layout{{ux(rng), ux(rng), ux(rng), ux(rng)}};
    const auto w = pamec::testing::random_unit_w(4, rng);
    const Position dev{ux(rng), uy(rng), 0.0};
    ComplexGain sum = 0.0;
    double mags = 0.0;
    for (int m = 0; m < 4; ++m) {
      const double r = std::sqrt(std::pow(layout.xs[m] - dev.x, 2) + dev.y * dev.y + kHeight * kHeight);
      const auto h = kConsts.eta * w.alpha[m] / r *
                     std::exp(ComplexGain(0.0, -2.0 * kPi * r / kConsts.lambda_free)) *
                     std::exp(ComplexGain(0.0, -2.0 * kPi * layout.xs[m] / kConsts.lambda_guided));
      sum += h;
      mags += std::abs(h);
    }
    const double gain = aggregate_downlink_gain(layout, w, dev, kHeight, kConsts);
    EXPECT_LE(std::abs(gain - std::norm(sum)), 1e-9 * mags * mags);
    EXPECT_LE(gain, mags * mags * (1.0 + 1e-12));
  }
}

TEST(Aggregate, ReflectionInvariance) {
  const PaLayout layout{{2.0, 7.5, 19.0}};
  const auto w = unit_alpha(3);
  const Position a{11.0, 3.5, 0.0};
  const Position b{11.0, -3.5, 0.0};
  EXPECT_EQ(aggregate_downlink_gain(layout, w, a, kHeight, kConsts),
            aggregate_downlink_gain(layout, w, b, kHeight, kConsts));
}

TEST(Aggregate, SpanFormMatches) {
  const PaLayout layout{{2.0, 7.5, 19.0}};
  const auto w = unit_alpha(3);
  const Position dev{4.0, 6.0, 0.0};
  EXPECT_EQ(aggregate_downlink_gain(layout, w, dev, kHeight, kConsts),
            aggregate_downlink_gain(std::span<const double>(layout.xs), w, dev, kHeight, kConsts));
  EXPECT_EQ(aggregate_uplink_gain(layout, dev, kHeight, kConsts),
            aggregate_uplink_gain(std::span<const double>(layout.xs), dev, kHeight, kConsts));
}

TEST(Aggregate, SizeMismatchThrows) {
  const PaLayout layout{{2.0, 7.5}};
  EXPECT_THROW(aggregate_downlink_gain(layout, unit_alpha(3), {1.0, 1.0, 0.0}, kHeight, kConsts),
               std::invalid_argument);
}

TEST(Spacing, Predicate) {
  const std::vector<double> ok{0.0, 1.0, 2.0};
  EXPECT_TRUE(spacing_feasible(ok, 1.0, 30.0));
  EXPECT_FALSE(spacing_feasible(std::vector<double>{0.0, 0.5}, 1.0, 30.0));
  EXPECT_FALSE(spacing_feasible(std::vector<double>{-0.1, 5.0}, 1.0, 30.0));
  EXPECT_FALSE(spacing_feasible(std::vector<double>{5.0, 30.1}, 1.0, 30.0));
  EXPECT_TRUE(spacing_feasible(std::vector<double>{5.0, 30.0}, 1.0, 30.0));
  EXPECT_TRUE(spacing_feasible(std::vector<double>{2.0, 0.0, 1.0}, 1.0, 30.0));
  EXPECT_TRUE(spacing_feasible(std::vector<double>{0.0, 1.0 - 1e-12}, 1.0, 30.0, 1e-9));
  EXPECT_TRUE(spacing_feasible(std::vector<double>{}, 1.0, 30.0));
}

TEST(Spacing, MinSeparation) {
  EXPECT_EQ(min_separation(std::vector<double>{4.0, 1.0, 2.5}), 1.5);
  EXPECT_TRUE(std::isinf(min_separation(std::vector<double>{4.0})));
}
