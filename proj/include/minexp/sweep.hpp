#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "minexp/graph.hpp"

namespace minexp::sweep {

enum class Algorithm { L1, Alg1, Alg2L1, Alg2L2 };

const char* to_string(Algorithm algo);
/// "l1", "alg1", "alg2-l1", "alg2-l2"; InvalidArgument otherwise.
Algorithm parse_algorithm(const std::string& name);

struct SweepConfig {
  int n = 200;
  int m = 100;
  int d = 3;
  double epsilon1 = 0.1;  // 0 keeps the plain adjacency matrix
  std::vector<int> sparsity_grid;
  int trials_per_point = 100;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::L1;
  std::vector<double> noise_snr_grid;  // dB; +inf means no noise
  bool with_repetition = false;
  int workers = 0;      // 0: OpenMP default
  bool timing = false;  // off keeps the CSV byte-identical across runs
};

struct SweepRow {
  int k = 0;
  double snr_db = 0.0;  // noise sweeps only
  int trials = 0;
  int successes = 0;
  int errors = 0;  // trials where the algorithm raised an Error
  double success_fraction = 0.0;
  double mean_ser_db = 0.0;
  double mean_runtime_ms = 0.0;
  double max_l1_ratio = 0.0;  // max ||x - xhat||_1 / ||v||_1 (noise sweeps)
};

/// `key = value` lines; '#' starts a comment. Lists are comma or space
/// separated. Unknown or repeated keys raise InvalidArgument.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);
void validate(const SweepConfig& cfg, bool noise);

/// The sweep's measurement matrix, a deterministic function of the config.
MeasurementMatrix sweep_matrix(const SweepConfig& cfg);

/// MINEXP_WORKERS if set, else cfg.workers, else the OpenMP default.
int effective_workers(const SweepConfig& cfg);

/// SER in dB, 10 log10(||x||^2 / ||x - xhat||^2), clamped to [-160, 160].
double ser_db(const linalg::Vector& x, const linalg::Vector& xhat);

std::vector<SweepRow> run_recovery_sweep(const SweepConfig& cfg);
std::vector<SweepRow> run_noise_sweep(const SweepConfig& cfg);

/// Config echoed as '#' lines, then the header and one line per row.
void write_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows, bool noise);

}  // namespace minexp::sweep
