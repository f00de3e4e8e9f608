#pragma once

namespace minexp::thresholds {

/// Base-2 binary entropy; H(0) = H(1) = 0. OutOfDomain outside [0, 1].
double binary_entropy(double x);

/// (H(mu) + beta H(mu/beta)) / (mu log2(beta/mu)). Any integer degree above
/// this value admits a (mu n, 1 - 1/d) expander with beta n right nodes for
/// large n. Requires 0 < mu < beta < 1 (OutOfDomain); returns +inf where the
/// denominator vanishes.
double strong_min_degree(double mu, double beta);

/// Largest mu in (0, beta) with strong_min_degree(mu, beta) < d, to 1e-10.
/// Requires d >= 3 and 0 < beta < 1; NoFeasibleMu if no such mu exists.
double strong_max_mu(double beta, int d);

/// sum_{r=d}^{r0} C(n,r) C(m,r) C(r,d)^r / C(m,d)^r evaluated through
/// log-gamma. Summands below e^-745 are dropped; the sum may be +inf.
double existence_prob_sum(int n, int m, int r0, int d);

/// 1 - existence_prob_sum clamped to [0, 1]: a lower bound on the probability
/// that a random left-d-regular graph is an (r0, 1 - 1/d) expander. Exactly 1
/// when r0 < d.
double existence_prob_bound(int n, int m, int r0, int d);

struct ThresholdParams {
  double alpha = 0.0;  // k / n
  double beta = 0.0;   // m / n
  int d = 0;
  double rho1 = 0.0;
  double rho2 = 0.0;

  /// (1 - e^{-d alpha / beta}) beta
  double gamma1() const;
};

/// alpha H(rho1/alpha) + (1-alpha) H(rho2/(1-alpha)) + beta H((rho1+rho2)/beta)
/// + d (rho1+rho2) log2((rho1+rho2)/beta), with 0 log 0 = 0. OutOfDomain
/// unless 0 < alpha < 1, 0 < beta < 1, 0 <= rho1 <= alpha,
/// 0 <= rho2 <= 1 - alpha and rho1 + rho2 <= beta.
double weak_F(const ThresholdParams& p);

struct WeakOptions {
  int grid = 400;
  int refine_starts = 5;  // grid maxima used as local search seeds
  double alpha_tol = 1e-9;
};

/// Largest F over {0 <= rho1 <= alpha, 0 <= rho2 <= 1 - alpha,
/// rho1 + rho2 <= gamma1} without the origin, by grid search plus compass
/// refinement from the best grid points.
double weak_sup_F(double alpha, double beta, int d, const WeakOptions& options = {});

/// Largest alpha for which weak_sup_F stays negative, by a coarse scan
/// followed by bisection. Requires d >= 3 and 0 < beta < 1; NoFeasibleAlpha
/// if even tiny alpha fails.
double weak_max_alpha(double beta, int d, const WeakOptions& options = {});

}  // namespace minexp::thresholds
