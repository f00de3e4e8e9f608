#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "minexp/matrix_io.hpp"
#include "minexp/recovery.hpp"

namespace fs = std::filesystem;
using namespace minexp;

namespace {

struct Outcome {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("minexp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(MINEXP_CLI_PATH) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("gen --n 10").code, 2);
  EXPECT_EQ(run("gen --n 10 --m 5 --d 7").code, 2);
  EXPECT_EQ(run("threshold --kind strong --beta 1.5 --d 6").code, 2);
  write("bad.txt", "2 3 2 0\n0: 0:1 1:1 2:1\n");
  EXPECT_EQ(run("certify --matrix " + path("bad.txt") + " --k 1").code, 2);
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen --n 30 --m 15 --d 3 --seed 4 --out " + path("a.txt")).code, 0);
  ASSERT_EQ(run("gen --n 30 --m 15 --d 3 --seed 4 --out " + path("b.txt")).code, 0);
  EXPECT_EQ(slurp("a.txt"), slurp("b.txt"));
  const MeasurementMatrix a = io::read_matrix(path("a.txt"));
  EXPECT_EQ(a.n(), 30);
  EXPECT_EQ(a.epsilon1(), 0.1);
  const Outcome r = run("gen --n 6 --m 4 --d 2 --eps1 0 --with-repetition");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("6 4 2 0", 0), 0u) << r.out;
}

TEST_F(Cli, RecoverRoundTrip) {
  ASSERT_EQ(run("gen --n 60 --m 30 --d 4 --seed 2 --out " + path("a.txt")).code, 0);
  const MeasurementMatrix a = io::read_matrix(path("a.txt"));
  const SparseSignal x = random_sparse_signal(60, 2, 17);
  io::write_vector(path("y.txt"), a.dense() * x.values);

  for (const std::string algo : {"l1", "alg2-l1", "alg2-l2"}) {
    const std::string k = algo == "l1" ? "" : " --k 2";
    ASSERT_EQ(run("recover --matrix " + path("a.txt") + " --y " + path("y.txt") + " --algo " + algo + k +
                  " --out " + path("x.txt"))
                  .code,
              0)
        << algo;
    const linalg::Vector xh = io::read_vector(path("x.txt"));
    EXPECT_LT((xh - x.values).lpNorm<Eigen::Infinity>(), 1e-6) << algo;
  }
  EXPECT_EQ(run("recover --matrix " + path("a.txt") + " --y " + path("y.txt") + " --algo alg2-l1 --k auto").code, 0);
  EXPECT_EQ(run("recover --matrix " + path("a.txt") + " --y " + path("y.txt") + " --algo alg2-l1").code, 2);
  EXPECT_EQ(run("recover --matrix " + path("a.txt") + " --y " + path("y.txt") + " --algo alg2-l1 --k two").code, 2);
}

TEST_F(Cli, NumericalFailuresExitThree) {
  ASSERT_EQ(run("gen --n 20 --m 10 --d 3 --seed 1 --out " + path("a.txt")).code, 0);
  // A dense measurement leaves no zero rows for the reverse-expansion step.
  write("y.txt", "1\n1\n1\n1\n1\n1\n1\n1\n1\n1\n");
  EXPECT_EQ(run("recover --matrix " + path("a.txt") + " --y " + path("y.txt") + " --algo alg1 --k 1").code, 3);
}

TEST_F(Cli, InfeasibleRecoveryExitsFour) {
  write("a.txt", "2 2 1 0\n0: 0:1\n1: 1:1\n");
  write("y.txt", "-1\n1\n");
  EXPECT_EQ(run("recover --matrix " + path("a.txt") + " --y " + path("y.txt")).code, 4);
}

TEST_F(Cli, Certify) {
  write("id.txt", "3 3 1 0\n0: 0:1\n1: 1:1\n2: 2:1\n");
  Outcome r = run("certify --matrix " + path("id.txt") + " --k 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("holds", 0), 0u) << r.out;

  // Two identical columns: no support containing one of them is recoverable.
  write("dup.txt", "3 2 1 0\n0: 0:1\n1: 0:1\n2: 1:1\n");
  r = run("certify --matrix " + path("dup.txt") + " --k 1");
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.out.rfind("fails: support 0", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("witness:"), std::string::npos);

  EXPECT_EQ(run("certify --matrix " + path("dup.txt") + " --mode support --support 2").code, 0);
  EXPECT_EQ(run("certify --matrix " + path("dup.txt") + " --mode support --support 1").code, 4);
  EXPECT_EQ(run("certify --matrix " + path("id.txt") + " --mode two-hop --support 0,2").code, 0);
  EXPECT_EQ(run("certify --matrix " + path("id.txt") + " --k 2 --max-supports 1").code, 2);
}

TEST_F(Cli, Threshold) {
  Outcome r = run("threshold --kind strong --beta 0.5 --d 6");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mu 0.291669679"), std::string::npos) << r.out;
  r = run("threshold --kind strong --beta 0.5 --mu 0.1");
  EXPECT_NE(r.out.find("min_degree 3.57444161"), std::string::npos) << r.out;
  r = run("threshold --kind prob --n 20 --m 14 --r0 8 --d 4");
  EXPECT_NE(r.out.find("bound 0.765244045"), std::string::npos) << r.out;
  EXPECT_EQ(run("threshold --kind strong --beta 0.5 --d 2").code, 2);
}

TEST_F(Cli, Sweeps) {
  write("cfg.txt",
        "n = 30\nm = 15\nd = 3\nsparsity_grid = 0, 2\ntrials_per_point = 5\nseed = 3\n"
        "algorithm = alg2-l1\nnoise_snr_grid = 20, inf\n");
  ASSERT_EQ(run("sweep --config " + path("cfg.txt") + " --out " + path("r.csv")).code, 0);
  EXPECT_NE(slurp("r.csv").find("\n0,1,"), std::string::npos) << slurp("r.csv");
  Outcome r = run("noise-sweep --config " + path("cfg.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k,snr_db,success_fraction"), std::string::npos);
  EXPECT_NE(r.out.find(",inf,"), std::string::npos) << r.out;

  write("bad.txt", "n = 30\nwho = 1\n");
  EXPECT_EQ(run("sweep --config " + path("bad.txt")).code, 2);
  EXPECT_EQ(run("sweep --config " + path("missing.txt")).code, 2);
}
