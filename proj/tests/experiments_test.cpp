#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pamec/experiments.hpp"
#include "test_support.hpp"

using namespace pamec;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.param = SweepParam::bs_power_dbm;
  spec.values = {38.0, 43.0};
  spec.schemes = {SchemeId::fixed_pa, SchemeId::tdma, SchemeId::conventional_mimo};
  spec.seeds = {1, 2};
  return spec;
}

SweepOptions quick(unsigned workers = 1) {
  SweepOptions opt;
  opt.workers = workers;
  opt.ao.pso.num_particles = 15;
  opt.ao.pso.num_starts = 1;
  opt.ao.pso.max_iters = 30;
  return opt;
}

std::string to_csv(const SweepTable& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(SweepParam, Names) {
  for (auto p : {SweepParam::bs_power_dbm, SweepParam::num_antennas, SweepParam::bandwidth}) {
    EXPECT_EQ(parse_sweep_param(to_string(p)), p);
  }
  EXPECT_THROW(parse_sweep_param("power"), ConfigError);
}

TEST(SweepParam, ApplyValue) {
  const ScenarioConfig base;
  EXPECT_NEAR(apply_sweep_value(base, SweepParam::bs_power_dbm, 33.0).bs_power, dbm_to_watts(33.0), 1e-15);
  EXPECT_EQ(apply_sweep_value(base, SweepParam::num_antennas, 6.0).num_antennas, 6);
  EXPECT_EQ(apply_sweep_value(base, SweepParam::bandwidth, 5e7).bandwidth, 5e7);
  EXPECT_THROW(apply_sweep_value(base, SweepParam::num_antennas, 2.5), ConfigError);
  EXPECT_THROW(apply_sweep_value(base, SweepParam::bandwidth, -1.0), ConfigError);
}

TEST(Spec, EmptyPartsRejected) {
  auto spec = small_spec();
  spec.schemes.clear();
  EXPECT_THROW(validate(spec), ConfigError);
  EXPECT_THROW(run_sweep(spec, ScenarioConfig{}, quick()), ConfigError);
  spec = small_spec();
  spec.values.clear();
  EXPECT_THROW(validate(spec), ConfigError);
  spec = small_spec();
  spec.seeds.clear();
  EXPECT_THROW(validate(spec), ConfigError);
}

TEST(Sweep, RowCountAndOrder) {
  const auto spec = small_spec();
  const auto table = run_sweep(spec, ScenarioConfig{}, quick());
  ASSERT_EQ(table.rows.size(), spec.values.size() * spec.schemes.size() * spec.seeds.size());
  std::size_t i = 0;
  for (double v : spec.values) {
    for (SchemeId s : spec.schemes) {
      for (auto seed : spec.seeds) {
        const auto& r = table.rows[i++];
        EXPECT_EQ(r.value, v);
        EXPECT_EQ(r.scheme, s);
        EXPECT_EQ(r.seed, seed);
        EXPECT_TRUE(r.error.empty()) << r.error;
        EXPECT_GT(r.objective_bits, 0.0);
        EXPECT_GT(r.harvested_joules, 0.0);
        EXPECT_FALSE(r.convergence.empty());
      }
    }
  }
}

TEST(Sweep, WorkerCountDoesNotChangeBytes) {
  const auto spec = small_spec();
  const auto one = to_csv(run_sweep(spec, ScenarioConfig{}, quick(1)));
  const auto three = to_csv(run_sweep(spec, ScenarioConfig{}, quick(3)));
  EXPECT_EQ(one, three);
}

TEST(Sweep, FailedCellsRecorded) {
  SweepSpec spec;
  spec.param = SweepParam::num_antennas;
  spec.values = {2.0, 9000.0};
  spec.schemes = {SchemeId::fixed_pa};
  spec.seeds = {1};
  const auto table = run_sweep(spec, ScenarioConfig{}, quick());
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_TRUE(table.rows[0].error.empty());
  EXPECT_FALSE(table.rows[1].error.empty());
  EXPECT_TRUE(std::isnan(table.rows[1].objective_bits));
  const auto means = aggregate_means(table);
  ASSERT_EQ(means.size(), 2u);
  EXPECT_EQ(means[1].failures, 1);
  EXPECT_EQ(means[1].cells, 0);
}

TEST(Sweep, InfeasibleCellFlagged) {
  ScenarioConfig base;
  base.num_antennas = 8000;
  base.min_spacing = 0.0;
  SweepSpec spec;
  spec.param = SweepParam::bandwidth;
  spec.values = {1e8};
  spec.schemes = {SchemeId::conventional_mimo};
  spec.seeds = {1};
  const auto table = run_sweep(spec, base, quick());
  EXPECT_TRUE(table.rows[0].infeasible);
}

TEST(Means, Averages) {
  SweepTable t;
  SweepRow a;
  a.value = 1.0;
  a.objective_bits = 2.0;
  a.harvested_joules = 4.0;
  SweepRow b = a;
  b.objective_bits = 4.0;
  b.harvested_joules = 8.0;
  SweepRow c = a;
  c.value = 2.0;
  t.rows = {a, b, c};
  const auto m = aggregate_means(t);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].objective_bits, 3.0);
  EXPECT_EQ(m[0].harvested_joules, 6.0);
  EXPECT_EQ(m[0].cells, 2);
  EXPECT_EQ(m[1].objective_bits, 2.0);
}

TEST(Csv, HeaderAndFormatting) {
  SweepTable t;
  SweepRow r;
  r.value = 43.0;
  r.seed = 7;
  r.objective_bits = 0.1;
  r.harvested_joules = 1e-7;
  r.tau1 = 0.5;
  r.tau2 = 0.5;
  r.outer_iters = 3;
  t.rows = {r};
  EXPECT_EQ(to_csv(t),
            "sweep_param,value,scheme,seed,objective_bits,harvested_joules,tau1,tau2,outer_iters\n"
            "bs_power_dbm,43,proposed,7,0.10000000000000001,9.9999999999999995e-08,0.5,0.5,3\n");
}

TEST(Csv, EmptyTableRejected) {
  std::ostringstream out;
  EXPECT_THROW(write_csv(SweepTable{}, out), ConfigError);
}

TEST(Csv, EmitTwiceIdentical) {
  const auto table = run_sweep(small_spec(), ScenarioConfig{}, quick());
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "pamec_emit_a.csv";
  const auto b = dir / "pamec_emit_b.csv";
  emit_csv(table, a);
  emit_csv(table, b);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), to_csv(table));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Csv, UnwritablePath) {
  const auto table = run_sweep(small_spec(), ScenarioConfig{}, quick());
  EXPECT_THROW(emit_csv(table, "/nonexistent-dir/x.csv"), std::runtime_error);
}
