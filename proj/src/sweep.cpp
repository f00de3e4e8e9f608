#include "minexp/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "minexp/error.hpp"
#include "minexp/random.hpp"
#include "minexp/recovery.hpp"

namespace minexp::sweep {

using linalg::Vector;

namespace {

constexpr double kSerCap = 160.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::string s = v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::InvalidArgument, "bad value for " + key + ": '" + value + "'");
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v);
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(out)) bad_value(key, v);
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v);
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

struct TrialResult {
  bool success = false;
  bool error = false;
  double ser = 0.0;
  double ms = 0.0;
  double l1_ratio = 0.0;
};

RecoveryReport run_algorithm(const MeasurementMatrix& a, const Vector& y, int k, Algorithm algo) {
  switch (algo) {
    case Algorithm::L1: return l1_min_nonneg(a, y);
    case Algorithm::Alg1: return reverse_expansion_recovery(a, y, k);
    case Algorithm::Alg2L1: return noisy_recovery(a, y, k, NormChoice::L1);
    case Algorithm::Alg2L2: return noisy_recovery(a, y, k, NormChoice::L2);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

TrialResult run_trial(const MeasurementMatrix& a, const SweepConfig& cfg, int k, int trial, const double* snr) {
  TrialResult r;
  const SparseSignal x = random_sparse_signal(cfg.n, k, derive_seed({cfg.seed, static_cast<std::uint64_t>(k),
                                                                     static_cast<std::uint64_t>(trial)}));
  const Vector clean = a.dense() * x.values;
  Vector y = clean;
  NoiseModel noise;
  if (snr) {
    noise = noise_at_snr(clean, *snr,
                         derive_seed({cfg.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(trial), 1}));
    y += noise.vector;
  }
  const auto start = std::chrono::steady_clock::now();
  RecoveryReport rep;
  try {
    rep = run_algorithm(a, y, k, cfg.algorithm);
  } catch (const Error&) {
    r.error = true;
    rep.estimate = Vector::Zero(cfg.n);
  }
  if (cfg.timing) {
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  r.success = !r.error && score(rep, x.values);
  r.ser = ser_db(x.values, rep.estimate);
  const double budget = noise.l1_budget();
  const double err = (x.values - rep.estimate).lpNorm<1>();
  r.l1_ratio = budget > 0.0 ? err / budget : (err > 1e-9 ? std::numeric_limits<double>::infinity() : 0.0);
  return r;
}

std::vector<SweepRow> run(const SweepConfig& cfg, bool noise) {
  validate(cfg, noise);
  const MeasurementMatrix a = sweep_matrix(cfg);
  struct Point {
    int k;
    double snr;
  };
  std::vector<Point> points;
  for (int k : cfg.sparsity_grid) {
    if (noise) {
      for (double s : cfg.noise_snr_grid) points.push_back({k, s});
    } else {
      points.push_back({k, 0.0});
    }
  }
  const int trials = cfg.trials_per_point;
  const auto total = static_cast<std::int64_t>(points.size()) * trials;
  std::vector<TrialResult> results(static_cast<std::size_t>(total));
  const int workers = effective_workers(cfg);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t t = 0; t < total; ++t) {
    const Point& p = points[static_cast<std::size_t>(t / trials)];
    results[static_cast<std::size_t>(t)] = run_trial(a, cfg, p.k, static_cast<int>(t % trials), noise ? &p.snr : nullptr);
  }

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    SweepRow row;
    row.k = points[i].k;
    row.snr_db = points[i].snr;
    row.trials = trials;
    double ser = 0.0, ms = 0.0;
    for (int t = 0; t < trials; ++t) {
      const TrialResult& r = results[i * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
      row.successes += r.success;
      row.errors += r.error;
      ser += r.ser;
      ms += r.ms;
      row.max_l1_ratio = std::max(row.max_l1_ratio, r.l1_ratio);
    }
    row.success_fraction = static_cast<double>(row.successes) / trials;
    row.mean_ser_db = ser / trials;
    row.mean_runtime_ms = ms / trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::L1: return "l1";
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2L1: return "alg2-l1";
    case Algorithm::Alg2L2: return "alg2-l2";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::L1, Algorithm::Alg1, Algorithm::Alg2L1, Algorithm::Alg2L2}) {
    if (name == to_string(a)) return a;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + name + "'");
}

SweepConfig parse_config(std::istream& in) {
  SweepConfig cfg;
  std::map<std::string, int> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (seen[key]++) throw Error(ErrorCode::InvalidArgument, "repeated key " + key);
    if (key == "n") {
      cfg.n = static_cast<int>(to_int(key, value));
    } else if (key == "m") {
      cfg.m = static_cast<int>(to_int(key, value));
    } else if (key == "d") {
      cfg.d = static_cast<int>(to_int(key, value));
    } else if (key == "epsilon1") {
      cfg.epsilon1 = to_real(key, value);
    } else if (key == "sparsity_grid") {
      cfg.sparsity_grid.clear();
      for (const auto& t : split_list(value)) cfg.sparsity_grid.push_back(static_cast<int>(to_int(key, t)));
    } else if (key == "trials_per_point") {
      cfg.trials_per_point = static_cast<int>(to_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "algorithm") {
      cfg.algorithm = parse_algorithm(value);
    } else if (key == "noise_snr_grid") {
      cfg.noise_snr_grid.clear();
      for (const auto& t : split_list(value)) cfg.noise_snr_grid.push_back(to_real(key, t));
    } else if (key == "with_repetition") {
      cfg.with_repetition = to_bool(key, value);
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(to_int(key, value));
    } else if (key == "timing") {
      cfg.timing = to_bool(key, value);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown key '" + key + "' on line " + std::to_string(line_no));
    }
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  return parse_config(f);
}

void validate(const SweepConfig& cfg, bool noise) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
  };
  need(cfg.n >= 1 && cfg.m >= 1, "n and m must be positive");
  need(cfg.d >= 1 && cfg.d <= cfg.m, "d must lie in [1, m]");
  need(cfg.epsilon1 >= 0.0 && cfg.epsilon1 < 1.0, "epsilon1 must lie in [0, 1)");
  need(!cfg.sparsity_grid.empty(), "sparsity_grid is empty");
  for (int k : cfg.sparsity_grid) need(k >= 0 && k <= cfg.n, "sparsity_grid values must lie in [0, n]");
  need(cfg.trials_per_point >= 1, "trials_per_point must be at least 1");
  need(cfg.workers >= 0, "workers must be non-negative");
  if (noise) {
    need(!cfg.noise_snr_grid.empty(), "noise_snr_grid is empty");
    need(cfg.algorithm == Algorithm::Alg2L1 || cfg.algorithm == Algorithm::Alg2L2,
         "noise sweeps need algorithm alg2-l1 or alg2-l2");
    for (double s : cfg.noise_snr_grid) need(!std::isnan(s) && s != -std::numeric_limits<double>::infinity(), "bad SNR");
  }
}

MeasurementMatrix sweep_matrix(const SweepConfig& cfg) {
  const BipartiteGraph g =
      random_left_regular(cfg.n, cfg.m, cfg.d, derive_seed({cfg.seed, 0x67726170ULL}),
                          cfg.with_repetition ? ColumnSampling::WithRepetition : ColumnSampling::Distinct);
  if (cfg.epsilon1 == 0.0) return MeasurementMatrix(g);
  return perturb(g, cfg.epsilon1, derive_seed({cfg.seed, 0x77656967ULL}));
}

int effective_workers(const SweepConfig& cfg) {
  if (const char* env = std::getenv("MINEXP_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
}

double ser_db(const Vector& x, const Vector& xhat) {
  const double sig = x.squaredNorm();
  const double err = (x - xhat).squaredNorm();
  if (err == 0.0) return kSerCap;
  if (sig == 0.0) return -kSerCap;
  return std::clamp(10.0 * std::log10(sig / err), -kSerCap, kSerCap);
}

std::vector<SweepRow> run_recovery_sweep(const SweepConfig& cfg) { return run(cfg, false); }

std::vector<SweepRow> run_noise_sweep(const SweepConfig& cfg) { return run(cfg, true); }

void write_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows, bool noise) {
  auto join_int = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  out << "# n = " << cfg.n << '\n'
      << "# m = " << cfg.m << '\n'
      << "# d = " << cfg.d << '\n'
      << "# epsilon1 = " << fmt(cfg.epsilon1) << '\n'
      << "# sparsity_grid = " << join_int(cfg.sparsity_grid) << '\n'
      << "# trials_per_point = " << cfg.trials_per_point << '\n'
      << "# seed = " << cfg.seed << '\n'
      << "# algorithm = " << to_string(cfg.algorithm) << '\n';
  if (noise) {
    std::string s;
    for (std::size_t i = 0; i < cfg.noise_snr_grid.size(); ++i) s += (i ? "," : "") + fmt(cfg.noise_snr_grid[i]);
    out << "# noise_snr_grid = " << s << '\n';
  }
  out << "# with_repetition = " << (cfg.with_repetition ? "true" : "false") << '\n';
  if (noise) {
    out << "k,snr_db,success_fraction,mean_ser_db,mean_runtime_ms,max_l1_ratio\n";
  } else {
    out << "k,success_fraction,mean_ser_db,mean_runtime_ms\n";
  }
  for (const SweepRow& r : rows) {
    out << r.k << ',';
    if (noise) out << fmt(r.snr_db) << ',';
    out << fmt(r.success_fraction) << ',' << fmt(r.mean_ser_db) << ',' << fmt(r.mean_runtime_ms);
    if (noise) out << ',' << fmt(r.max_l1_ratio);
    out << '\n';
  }
}

}  // namespace minexp::sweep
