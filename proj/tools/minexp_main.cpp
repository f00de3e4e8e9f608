// minexp: command-line front end for matrix generation, recovery,
// certification, threshold queries and Monte-Carlo sweeps.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "minexp/error.hpp"
#include "minexp/graph.hpp"
#include "minexp/matrix_io.hpp"
#include "minexp/nullspace.hpp"
#include "minexp/recovery.hpp"
#include "minexp/sweep.hpp"
#include "minexp/thresholds.hpp"

namespace {

using namespace minexp;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;
constexpr int kFailed = 4;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::RankDeficient:
    case ErrorCode::NumericalFailure:
    case ErrorCode::InsufficientZeros:
    case ErrorCode::DegenerateSplit:
      return kNumeric;
    case ErrorCode::NoFeasibleMu:
    case ErrorCode::NoFeasibleAlpha:
      return kFailed;
    default:
      return kUsage;
  }
}

// Writes to `path`, or stdout for "-".
template <class F>
void with_output(const std::string& path, F&& f) {
  if (path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f(out);
}

IndexSet parse_support(const std::string& text) {
  IndexSet s;
  std::string t = text;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(t);
  for (std::string tok; in >> tok;) {
    try {
      std::size_t used = 0;
      s.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad support index '" + tok + "'");
    }
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw Error(ErrorCode::InvalidArgument, "repeated support index");
  }
  return s;
}

std::string join(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

void print_witness(const linalg::Vector& w) {
  std::cout << "witness:";
  std::cout << std::setprecision(17);
  for (Eigen::Index i = 0; i < w.size(); ++i) std::cout << ' ' << w(i);
  std::cout << '\n';
}

struct GenArgs {
  int n = 0, m = 0, d = 0;
  double eps1 = 0.1;
  std::uint64_t seed = 1;
  bool with_repetition = false;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a) {
  const BipartiteGraph g = random_left_regular(
      a.n, a.m, a.d, a.seed, a.with_repetition ? ColumnSampling::WithRepetition : ColumnSampling::Distinct);
  const MeasurementMatrix mat = a.eps1 == 0.0 ? MeasurementMatrix(g) : perturb(g, a.eps1, a.seed ^ 0x5eedULL);
  with_output(a.out, [&](std::ostream& os) { io::write_matrix(os, mat); });
  return kOk;
}

struct RecoverArgs {
  std::string matrix, y, algo = "l1", k, out = "-";
  double zero_tol = 1e-9;
};

int cmd_recover(const RecoverArgs& a) {
  const MeasurementMatrix mat = io::read_matrix(a.matrix);
  const linalg::Vector y = io::read_vector(a.y);
  const sweep::Algorithm algo = sweep::parse_algorithm(a.algo);
  std::optional<int> k;
  bool auto_k = false;
  if (a.k == "auto") {
    auto_k = true;
  } else if (!a.k.empty()) {
    try {
      std::size_t used = 0;
      k = std::stoi(a.k, &used);
      if (used != a.k.size()) throw std::invalid_argument(a.k);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--k must be an integer or 'auto'");
    }
  }
  RecoveryReport rep;
  if (algo == sweep::Algorithm::L1) {
    rep = l1_min_nonneg(mat, y);
  } else if (auto_k) {
    if (algo == sweep::Algorithm::Alg1) throw Error(ErrorCode::InvalidArgument, "--k auto needs alg2-l1 or alg2-l2");
    const int cap = std::max(0, std::min(mat.n(), mat.m() / mat.d()));
    rep = noisy_recovery_auto(mat, y, cap, algo == sweep::Algorithm::Alg2L1 ? NormChoice::L1 : NormChoice::L2);
  } else {
    if (!k) throw Error(ErrorCode::InvalidArgument, "--k is required for " + a.algo);
    if (algo == sweep::Algorithm::Alg1) {
      rep = reverse_expansion_recovery(mat, y, *k, a.zero_tol);
    } else {
      rep = noisy_recovery(mat, y, *k, algo == sweep::Algorithm::Alg2L1 ? NormChoice::L1 : NormChoice::L2);
    }
  }
  std::cerr << "status: " << rep.solver_status << "\nresidual_l1: " << rep.residual_l1 << '\n';
  if (rep.zero_set_size >= 0) std::cerr << "zero_set_size: " << rep.zero_set_size << '\n';
  if (rep.k_used >= 0) std::cerr << "k: " << rep.k_used << '\n';
  if (rep.solver_status == "infeasible") return kFailed;
  with_output(a.out, [&](std::ostream& os) { io::write_vector(os, rep.estimate); });
  return kOk;
}

struct CertifyArgs {
  std::string matrix, mode = "strong", support;
  int k = 0;
  double max_supports = 1e6;
};

int cmd_certify(const CertifyArgs& a) {
  const MeasurementMatrix mat = io::read_matrix(a.matrix);
  if (a.mode == "strong") {
    const StrongCertificate c = strong_recoverable_k(mat, a.k, {a.max_supports});
    if (c.holds) {
      std::cout << "holds: every support of size " << a.k << " is recoverable\n";
      return kOk;
    }
    std::cout << "fails: support " << join(c.failing_support) << '\n';
    if (c.witness) print_witness(*c.witness);
    return kFailed;
  }
  const IndexSet s = parse_support(a.support);
  if (a.mode == "support") {
    const SupportCertificate c = support_recoverable(mat, s);
    if (c.recoverable) {
      std::cout << "holds: support " << join(s) << " is recoverable\n";
      return kOk;
    }
    std::cout << "fails: support " << join(s) << '\n';
    if (c.failing_witness) print_witness(*c.failing_witness);
    return kFailed;
  }
  if (a.mode == "two-hop") {
    const bool ok = two_hop_condition(mat, s);
    std::cout << (ok ? "holds" : "fails") << ": two-hop matching condition on " << join(s) << '\n';
    return ok ? kOk : kFailed;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mode " + a.mode);
}

struct ThresholdArgs {
  std::string kind;
  double beta = 0.5;
  int d = 0;
  std::optional<double> mu;
  int n = 0, m = 0, r0 = 0;
};

int cmd_threshold(const ThresholdArgs& a) {
  std::cout << std::setprecision(12);
  if (a.kind == "strong") {
    if (a.mu) {
      std::cout << "min_degree " << thresholds::strong_min_degree(*a.mu, a.beta) << '\n';
      return kOk;
    }
    const double mu = thresholds::strong_max_mu(a.beta, a.d);
    std::cout << "mu " << mu << "\nmu_over_d " << mu / a.d << '\n';
    return kOk;
  }
  if (a.kind == "weak") {
    std::cout << "alpha " << thresholds::weak_max_alpha(a.beta, a.d) << '\n';
    return kOk;
  }
  if (a.kind == "prob") {
    std::cout << "bound " << thresholds::existence_prob_bound(a.n, a.m, a.r0, a.d) << '\n';
    return kOk;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kind " + a.kind);
}

int cmd_sweep(const std::string& config, const std::string& out, bool noise) {
  const sweep::SweepConfig cfg = sweep::load_config(config);
  const auto rows = noise ? sweep::run_noise_sweep(cfg) : sweep::run_recovery_sweep(cfg);
  with_output(out, [&](std::ostream& os) { sweep::write_csv(os, cfg, rows, noise); });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-negative sparse recovery with perturbed expander matrices"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random (perturbed) left-regular measurement matrix");
  g->add_option("--n", gen.n, "Columns (signal length)")->required();
  g->add_option("--m", gen.m, "Rows (measurements)")->required();
  g->add_option("--d", gen.d, "Left degree")->required();
  g->add_option("--eps1", gen.eps1, "Weight perturbation; 0 keeps unit weights")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_flag("--with-repetition", gen.with_repetition, "Sample column neighbours with repetition");
  g->add_option("--out", gen.out, "Output file, - for stdout")->capture_default_str();

  RecoverArgs rec;
  auto* r = app.add_subcommand("recover", "Recover a signal from measurements");
  r->add_option("--matrix", rec.matrix)->required();
  r->add_option("--y", rec.y, "Measurement vector file")->required();
  r->add_option("--algo", rec.algo)->check(CLI::IsMember({"l1", "alg1", "alg2-l1", "alg2-l2"}))->capture_default_str();
  r->add_option("--k", rec.k, "Sparsity, or 'auto' for alg2-*");
  r->add_option("--zero-tol", rec.zero_tol, "alg1 zero threshold relative to max |y|")->capture_default_str();
  r->add_option("--out", rec.out)->capture_default_str();

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "Certify recoverability");
  c->add_option("--matrix", cert.matrix)->required();
  c->add_option("--k", cert.k, "Support size for --mode strong");
  c->add_option("--mode", cert.mode)->check(CLI::IsMember({"strong", "support", "two-hop"}))->capture_default_str();
  c->add_option("--support", cert.support, "Comma-separated column indices");
  c->add_option("--max-supports", cert.max_supports)->capture_default_str();

  ThresholdArgs th;
  auto* t = app.add_subcommand("threshold", "Asymptotic thresholds and finite-n existence bound");
  t->add_option("--kind", th.kind)->check(CLI::IsMember({"strong", "weak", "prob"}))->required();
  t->add_option("--beta", th.beta)->capture_default_str();
  t->add_option("--d", th.d);
  t->add_option("--mu", th.mu);
  t->add_option("--n", th.n);
  t->add_option("--m", th.m);
  t->add_option("--r0", th.r0);

  std::string sweep_config, sweep_out = "-";
  auto* s = app.add_subcommand("sweep", "Recovery-rate sweep, CSV output");
  s->add_option("--config", sweep_config)->required();
  s->add_option("--out", sweep_out)->capture_default_str();

  std::string noise_config, noise_out = "-";
  auto* ns = app.add_subcommand("noise-sweep", "SER versus SNR sweep, CSV output");
  ns->add_option("--config", noise_config)->required();
  ns->add_option("--out", noise_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*r) return cmd_recover(rec);
    if (*c) return cmd_certify(cert);
    if (*t) return cmd_threshold(th);
    if (*s) return cmd_sweep(sweep_config, sweep_out, false);
    if (*ns) return cmd_sweep(noise_config, noise_out, true);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
