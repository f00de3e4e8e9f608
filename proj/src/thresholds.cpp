#include "minexp/thresholds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "minexp/error.hpp"

namespace minexp::thresholds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// x log2(x) with 0 log 0 = 0.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_beta_d(double beta, int d) {
  if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorCode::OutOfDomain, "beta must lie in (0, 1)");
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "threshold search needs d >= 3");
}

struct Region {
  double alpha, beta, gamma1;
  int d;

  bool contains(double r1, double r2) const {
    return r1 >= 0.0 && r2 >= 0.0 && r1 <= alpha && r2 <= 1.0 - alpha && r1 + r2 <= gamma1 && r1 + r2 > 0.0;
  }
  double f(double r1, double r2) const { return weak_F({alpha, beta, d, r1, r2}); }
};

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::OutOfDomain, "entropy argument " + std::to_string(x));
  if (x == 0.0 || x == 1.0) return 0.0;
  // log1p keeps the (1-x) term accurate for x near 0.
  return -xlog2x(x) - (1.0 - x) * std::log1p(-x) / std::numbers::ln2;
}

double strong_min_degree(double mu, double beta) {
  if (!(mu > 0.0 && mu < beta && beta < 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "need 0 < mu < beta < 1");
  }
  const double den = mu * std::log2(beta / mu);
  if (!(den > 0.0)) return kInf;
  return (binary_entropy(mu) + beta * binary_entropy(mu / beta)) / den;
}

double strong_max_mu(double beta, int d) {
  require_beta_d(beta, d);
  auto ok = [&](double mu) { return strong_min_degree(mu, beta) < d; };
  constexpr int kScan = 1000;
  double lo = -1.0;
  double hi = beta;
  for (int i = 1; i < kScan; ++i) {
    const double mu = beta * i / kScan;
    if (ok(mu)) {
      lo = mu;
      hi = std::min(beta, beta * (i + 1) / kScan);
    }
  }
  if (lo < 0.0) {
    const double tiny = beta * 1e-9;
    if (!ok(tiny)) throw Error(ErrorCode::NoFeasibleMu, "no mu satisfies the degree bound for d = " + std::to_string(d));
    lo = tiny;
    hi = beta / kScan;
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

double existence_prob_sum(int n, int m, int r0, int d) {
  if (n < 1 || m < 1 || d < 1 || d > m) throw Error(ErrorCode::InvalidArgument, "need n, m >= 1 and 1 <= d <= m");
  const int top = std::min({r0, n, m});
  const double log_cmd = log_binomial(m, d);
  double sum = 0.0;
  for (int r = d; r <= top; ++r) {
    const double lg = log_binomial(n, r) + log_binomial(m, r) + r * (log_binomial(r, d) - log_cmd);
    if (lg < -745.0) continue;
    sum += std::exp(lg);
  }
  return sum;
}

double existence_prob_bound(int n, int m, int r0, int d) {
  return std::clamp(1.0 - existence_prob_sum(n, m, r0, d), 0.0, 1.0);
}

double ThresholdParams::gamma1() const { return (1.0 - std::exp(-d * alpha / beta)) * beta; }

double weak_F(const ThresholdParams& p) {
  const double tol = 1e-12;
  if (!(p.alpha > 0.0 && p.alpha < 1.0 && p.beta > 0.0 && p.beta < 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "alpha and beta must lie in (0, 1)");
  }
  const double s = p.rho1 + p.rho2;
  if (!(p.rho1 >= 0.0 && p.rho2 >= 0.0 && p.rho1 <= p.alpha + tol && p.rho2 <= 1.0 - p.alpha + tol &&
        s <= p.beta + tol)) {
    throw Error(ErrorCode::OutOfDomain, "rho1 = " + std::to_string(p.rho1) + ", rho2 = " + std::to_string(p.rho2));
  }
  auto h = [](double x) { return binary_entropy(std::clamp(x, 0.0, 1.0)); };
  const double last = s > 0.0 ? p.d * s * std::log2(s / p.beta) : 0.0;
  return p.alpha * h(p.rho1 / p.alpha) + (1.0 - p.alpha) * h(p.rho2 / (1.0 - p.alpha)) + p.beta * h(s / p.beta) +
         last;
}

double weak_sup_F(double alpha, double beta, int d, const WeakOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::OutOfDomain, "alpha must lie in (0, 1)");
  require_beta_d(beta, d);
  if (options.grid < 2) throw Error(ErrorCode::InvalidArgument, "grid must be at least 2");
  const Region reg{alpha, beta, (1.0 - std::exp(-d * alpha / beta)) * beta, d};
  const int N = options.grid;
  const double h1 = alpha / N;
  const double h2 = std::min(1.0 - alpha, reg.gamma1) / N;

  struct Cell {
    double value;
    double r1, r2;
  };
  const int keep = std::max(options.refine_starts, 1);
  std::vector<std::vector<Cell>> row_best(static_cast<std::size_t>(N) + 1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= N; ++i) {
    std::vector<Cell>& best = row_best[static_cast<std::size_t>(i)];
    for (int j = 0; j <= N; ++j) {
      const double r1 = h1 * i;
      const double r2 = h2 * j;
      if (!reg.contains(r1, r2)) continue;
      best.push_back({reg.f(r1, r2), r1, r2});
      std::sort(best.begin(), best.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
      if (static_cast<int>(best.size()) > keep) best.pop_back();
    }
  }
  std::vector<Cell> top;
  for (const auto& row : row_best) top.insert(top.end(), row.begin(), row.end());
  std::stable_sort(top.begin(), top.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
  if (static_cast<int>(top.size()) > keep) top.resize(static_cast<std::size_t>(keep));
  if (top.empty()) return -kInf;

  double sup = top.front().value;
  for (Cell c : top) {
    double step = std::max(h1, h2);
    while (step > 1e-13) {
      bool moved = false;
      for (auto [u, v] : std::array<std::array<double, 2>, 8>{
               {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}}) {
        const double r1 = c.r1 + step * u;
        const double r2 = c.r2 + step * v;
        if (!reg.contains(r1, r2)) continue;
        const double val = reg.f(r1, r2);
        if (val > c.value) {
          c = {val, r1, r2};
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    sup = std::max(sup, c.value);
  }
  return sup;
}

double weak_max_alpha(double beta, int d, const WeakOptions& options) {
  require_beta_d(beta, d);
  auto ok = [&](double alpha) { return weak_sup_F(alpha, beta, d, options) < 0.0; };
  constexpr int kScan = 50;
  double lo = 1e-6;
  if (!ok(lo)) throw Error(ErrorCode::NoFeasibleAlpha, "F is non-negative already at alpha = 1e-6");
  double hi = 1.0 - 1e-9;
  for (int i = 1; i < kScan; ++i) {
    const double alpha = static_cast<double>(i) / kScan;
    if (alpha <= lo) continue;
    if (!ok(alpha)) {
      hi = alpha;
      break;
    }
    lo = alpha;
  }
  while (hi - lo > options.alpha_tol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace minexp::thresholds
