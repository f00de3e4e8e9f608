#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "minexp/error.hpp"
#include "minexp/sweep.hpp"

using namespace minexp;
using namespace minexp::sweep;

namespace {

SweepConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string csv(const SweepConfig& cfg, bool noise) {
  std::ostringstream out;
  write_csv(out, cfg, noise ? run_noise_sweep(cfg) : run_recovery_sweep(cfg), noise);
  return out.str();
}

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.n = 40;
  cfg.m = 20;
  cfg.d = 3;
  cfg.sparsity_grid = {0, 1, 3, 6};
  cfg.trials_per_point = 12;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST(SweepConfig, ParsesAllKeys) {
  const SweepConfig cfg = parse(
      "# comment\n"
      "n = 50\nm = 25\nd = 4\nepsilon1 = 0.2\n"
      "sparsity_grid = 1, 2 5\ntrials_per_point = 7  # trailing\n"
      "seed = 99\nalgorithm = alg2-l2\nnoise_snr_grid = 10, 20, inf\n"
      "with_repetition = true\nworkers = 2\ntiming = false\n");
  EXPECT_EQ(cfg.n, 50);
  EXPECT_EQ(cfg.m, 25);
  EXPECT_EQ(cfg.d, 4);
  EXPECT_EQ(cfg.epsilon1, 0.2);
  EXPECT_EQ(cfg.sparsity_grid, (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(cfg.trials_per_point, 7);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.algorithm, Algorithm::Alg2L2);
  ASSERT_EQ(cfg.noise_snr_grid.size(), 3u);
  EXPECT_TRUE(std::isinf(cfg.noise_snr_grid[2]));
  EXPECT_TRUE(cfg.with_repetition);
  EXPECT_EQ(cfg.workers, 2);
  EXPECT_FALSE(cfg.timing);
}

TEST(SweepConfig, RejectsUnknownAndRepeatedKeys) {
  EXPECT_THROW(parse("n = 5\nbogus = 1\n"), Error);
  EXPECT_THROW(parse("n = 5\nn = 6\n"), Error);
  EXPECT_THROW(parse("n five\n"), Error);
  EXPECT_THROW(parse("n = five\n"), Error);
  EXPECT_THROW(parse("algorithm = simplex\n"), Error);
}

TEST(SweepConfig, Validation) {
  SweepConfig cfg = small_config();
  EXPECT_NO_THROW(validate(cfg, false));
  EXPECT_THROW(validate(cfg, true), Error);  // no SNR grid, wrong algorithm
  cfg.noise_snr_grid = {10.0};
  cfg.algorithm = Algorithm::Alg2L1;
  EXPECT_NO_THROW(validate(cfg, true));

  SweepConfig bad = small_config();
  bad.d = 30;
  EXPECT_THROW(validate(bad, false), Error);
  bad = small_config();
  bad.sparsity_grid = {41};
  EXPECT_THROW(validate(bad, false), Error);
  bad = small_config();
  bad.epsilon1 = 1.0;
  EXPECT_THROW(validate(bad, false), Error);
  bad = small_config();
  bad.trials_per_point = 0;
  EXPECT_THROW(validate(bad, false), Error);
}

TEST(SweepAlgorithms, NamesRoundTrip) {
  for (Algorithm a : {Algorithm::L1, Algorithm::Alg1, Algorithm::Alg2L1, Algorithm::Alg2L2}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
}

TEST(Ser, KnownValues) {
  linalg::Vector x(2), xh(2);
  x << 1.0, 0.0;
  xh << 0.9, 0.0;
  EXPECT_NEAR(ser_db(x, xh), 20.0, 1e-12);
  EXPECT_EQ(ser_db(x, x), 160.0);
  xh << 1e9, 0.0;
  EXPECT_EQ(ser_db(x, xh), -160.0);
}

TEST(SweepMatrix, DeterministicAndRespectsEpsilon) {
  SweepConfig cfg = small_config();
  EXPECT_TRUE((sweep_matrix(cfg).dense().array() == sweep_matrix(cfg).dense().array()).all());
  EXPECT_EQ(sweep_matrix(cfg).epsilon1(), 0.1);
  cfg.epsilon1 = 0.0;
  const MeasurementMatrix a = sweep_matrix(cfg);
  EXPECT_TRUE(((a.dense().array() == 0.0) || (a.dense().array() == 1.0)).all());
}

TEST(RecoverySweep, RowsAreConsistent) {
  const SweepConfig cfg = small_config();
  const auto rows = run_recovery_sweep(cfg);
  ASSERT_EQ(rows.size(), cfg.sparsity_grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].k, cfg.sparsity_grid[i]);
    EXPECT_EQ(rows[i].trials, cfg.trials_per_point);
    EXPECT_DOUBLE_EQ(rows[i].success_fraction * rows[i].trials, rows[i].successes);
  }
  EXPECT_EQ(rows[0].success_fraction, 1.0);
  EXPECT_EQ(rows[1].success_fraction, 1.0);
}

TEST(RecoverySweep, ByteIdenticalAcrossRunsAndWorkers) {
  SweepConfig cfg = small_config();
  cfg.workers = 1;
  const std::string one = csv(cfg, false);
  cfg.workers = 3;
  const std::string three = csv(cfg, false);
  EXPECT_EQ(one, three);
  EXPECT_EQ(one, csv(cfg, false));
  EXPECT_NE(one.find("k,success_fraction,mean_ser_db,mean_runtime_ms\n"), std::string::npos);
  EXPECT_EQ(one.find("workers"), std::string::npos);
}

TEST(RecoverySweep, AllAlgorithmsRun) {
  SweepConfig cfg = small_config();
  for (Algorithm a : {Algorithm::Alg1, Algorithm::Alg2L1, Algorithm::Alg2L2}) {
    cfg.algorithm = a;
    const auto rows = run_recovery_sweep(cfg);
    EXPECT_EQ(rows[0].success_fraction, 1.0) << to_string(a);
  }
}

TEST(NoiseSweep, NoiselessColumnIsExactAndSerGrowsWithSnr) {
  SweepConfig cfg = small_config();
  cfg.sparsity_grid = {1, 2};
  cfg.trials_per_point = 30;
  cfg.algorithm = Algorithm::Alg2L1;
  cfg.noise_snr_grid = {0.0, 20.0, 40.0, INFINITY};
  const auto rows = run_noise_sweep(cfg);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    EXPECT_LE(rows[i].mean_ser_db, rows[i + 1].mean_ser_db);
    EXPECT_LE(rows[i + 1].mean_ser_db, rows[i + 2].mean_ser_db);
    EXPECT_TRUE(std::isinf(rows[i + 3].snr_db));
  }
  const std::string out = csv(cfg, true);
  EXPECT_NE(out.find("k,snr_db,success_fraction,mean_ser_db,mean_runtime_ms,max_l1_ratio\n"), std::string::npos);
  EXPECT_EQ(out, csv(cfg, true));
}

TEST(Workers, EnvironmentOverride) {
  SweepConfig cfg;
  cfg.workers = 2;
  ::setenv("MINEXP_WORKERS", "5", 1);
  EXPECT_EQ(effective_workers(cfg), 5);
  ::unsetenv("MINEXP_WORKERS");
  EXPECT_EQ(effective_workers(cfg), 2);
  cfg.workers = 0;
  EXPECT_GE(effective_workers(cfg), 1);
}
