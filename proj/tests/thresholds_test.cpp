#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

#include "minexp/error.hpp"
#include "minexp/thresholds.hpp"

using namespace minexp;
using namespace minexp::thresholds;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

cpp_int choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

cpp_int ipow(int base, int e) {
  cpp_int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

cpp_rational exact_sum(int n, int m, int r0, int d) {
  cpp_rational total = 0;
  for (int r = d; r <= r0; ++r) {
    cpp_int num = choose(n, r) * choose(m, r);
    cpp_int den = 1;
    for (int i = 0; i < r; ++i) {
      num *= choose(r, d);
      den *= choose(m, d);
    }
    total += cpp_rational(num, den);
  }
  return total;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

// Reference values below come from tests/oracles/threshold_oracles.py
// (mpmath, 50 digits).

TEST(BinaryEntropy, KnownValues) {
  EXPECT_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.2), 0.72192809488736234787, 1e-15);
  EXPECT_EQ(code_of([] { binary_entropy(-0.01); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([] { binary_entropy(1.01); }), ErrorCode::OutOfDomain);
}

TEST(BinaryEntropy, Symmetric) {
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    EXPECT_NEAR(binary_entropy(x), binary_entropy(1.0 - x), 1e-12);
  }
}

TEST(BinaryEntropy, BinomialSandwichExact) {
  // 2^{n H(k/n)} = n^n / (k^k (n-k)^(n-k)), so both sides reduce to integers.
  for (int n = 1; n <= 60; ++n) {
    const cpp_int nn = ipow(n, n);
    for (int k = 0; k <= n; ++k) {
      const cpp_int c = choose(n, k);
      const cpp_int kk = ipow(k, k) * ipow(n - k, n - k);
      EXPECT_TRUE((n + 1) * c * kk >= nn) << n << " " << k;
      EXPECT_TRUE(c * kk <= (n + 1) * nn) << n << " " << k;

      const double h = binary_entropy(static_cast<double>(k) / n);
      const double lc = std::log2(c.convert_to<double>());
      const double slack = std::log2(n + 1.0);
      EXPECT_LE(n * h - slack, lc + 1e-9);
      EXPECT_LE(lc, n * h + slack + 1e-9);
    }
  }
}

TEST(StrongMinDegree, FrozenValues) {
  EXPECT_NEAR(strong_min_degree(0.1, 0.5), 3.5744416153990507889, 1e-12);
  EXPECT_NEAR(strong_min_degree(0.25, 0.5), 5.2451124978365314556, 1e-12);
  EXPECT_NEAR(strong_min_degree(1e-6, 0.5), 2.2052332802486247025, 1e-10);
  EXPECT_NEAR(strong_min_degree(1e-8, 0.5), 2.1519188868507533392, 1e-10);
  EXPECT_NEAR(strong_min_degree(1e-12, 0.5), 2.099976233722826418, 1e-9);
}

TEST(StrongMinDegree, SmallMuLimitTrendsToTwo) {
  double prev = strong_min_degree(1e-4, 0.5);
  for (double mu : {1e-6, 1e-8, 1e-10, 1e-12}) {
    const double v = strong_min_degree(mu, 0.5);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 2.0);
    prev = v;
  }
}

TEST(StrongMinDegree, DomainAndSingularity) {
  EXPECT_GT(strong_min_degree(0.25, 0.5), 0.0);
  EXPECT_TRUE(std::isfinite(strong_min_degree(0.25, 0.5)));
  EXPECT_GT(strong_min_degree(0.5 - 1e-12, 0.5), 1e6);
  EXPECT_EQ(code_of([] { strong_min_degree(0.5, 0.5); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([] { strong_min_degree(0.0, 0.5); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([] { strong_min_degree(0.2, 1.0); }), ErrorCode::OutOfDomain);
}

TEST(StrongMinDegree, DecreasesAsBetaGrows) {
  for (double mu : {0.05, 0.1, 0.2}) {
    double prev = strong_min_degree(mu, 0.3);
    for (double beta : {0.4, 0.5, 0.7, 0.9}) {
      const double v = strong_min_degree(mu, beta);
      EXPECT_LT(v, prev) << mu << " " << beta;
      prev = v;
    }
  }
}

TEST(StrongMaxMu, FrozenTableAtHalf) {
  // Self-generated regression baseline (bisection to 1e-10).
  const double table[] = {0.035736235916615, 0.146710973322391, 0.233504023432732, 0.291669679045677,
                          0.331242257118225, 0.359239346385002, 0.379824404239655, 0.395473249018192,
                          0.407708190917969, 0.417501682579517};
  for (int d = 3; d <= 12; ++d) {
    const double mu = strong_max_mu(0.5, d);
    EXPECT_NEAR(mu, table[d - 3], 1e-8) << "d = " << d;
    EXPECT_LT(strong_min_degree(mu, 0.5), d);
    EXPECT_GE(strong_min_degree(mu + 1e-9, 0.5), d);
  }
}

TEST(StrongMaxMu, MonotoneAndPositive) {
  for (double beta = 0.1; beta <= 0.9 + 1e-12; beta += 0.1) {
    double prev = 0.0;
    for (int d = 3; d <= 12; ++d) {
      const double mu = strong_max_mu(beta, d);
      EXPECT_GT(mu, 0.0);
      EXPECT_GE(mu, prev);
      prev = mu;
    }
  }
  for (int d : {4, 8}) {
    EXPECT_LT(strong_max_mu(0.3, d), strong_max_mu(0.6, d));
  }
  EXPECT_EQ(code_of([] { strong_max_mu(0.5, 2); }), ErrorCode::InvalidDegree);
}

TEST(ExistenceBound, MatchesRationalArithmetic) {
  struct Case {
    int n, m, r0, d;
  };
  for (Case c : {Case{8, 6, 4, 3}, Case{12, 9, 6, 3}, Case{20, 14, 8, 4}, Case{30, 20, 10, 3}, Case{16, 12, 12, 5}}) {
    const double exact = exact_sum(c.n, c.m, c.r0, c.d).convert_to<double>();
    EXPECT_NEAR(existence_prob_sum(c.n, c.m, c.r0, c.d), exact, 1e-12 * std::max(1.0, exact))
        << c.n << " " << c.m << " " << c.r0 << " " << c.d;
    EXPECT_NEAR(existence_prob_bound(c.n, c.m, c.r0, c.d), std::clamp(1.0 - exact, 0.0, 1.0), 1e-12);
  }
  // Python/fractions reference for 1 - sum.
  EXPECT_NEAR(1.0 - existence_prob_sum(8, 6, 4, 3), -0.82, 1e-12);
  EXPECT_NEAR(1.0 - existence_prob_sum(12, 9, 6, 3), -15.87823617731295088, 1e-11);
  EXPECT_NEAR(existence_prob_bound(20, 14, 8, 4), 0.76524404515734195174, 1e-12);
}

TEST(ExistenceBound, EmptySumAndMonotonicity) {
  EXPECT_EQ(existence_prob_bound(50, 20, 2, 3), 1.0);
  for (int n : {100, 500}) {
    double prev = 1.0;
    for (int r0 = 0; r0 <= n / 2; ++r0) {
      const double b = existence_prob_bound(n, n / 2, r0, 3);
      EXPECT_LE(b, prev);
      EXPECT_GE(b, 0.0);
      prev = b;
    }
  }
}

TEST(ExistenceBound, TransitionAtDeskScale) {
  EXPECT_GT(existence_prob_bound(500, 250, 10, 3), 0.99);
  EXPECT_EQ(existence_prob_bound(500, 250, 40, 3), 0.0);
}

TEST(WeakF, FrozenValues) {
  auto f = [](double r1, double r2) { return weak_F({0.05, 0.5, 6, r1, r2}); };
  EXPECT_EQ(f(0.0, 0.0), 0.0);
  EXPECT_NEAR(f(0.01, 0.02), -0.39083686612410486103, 1e-12);
  EXPECT_NEAR(f(0.02, 0.05), -0.56806496042370417602, 1e-12);
  EXPECT_NEAR(f(0.04, 0.1), -0.61765153214933013251, 1e-12);
  EXPECT_NEAR(f(0.001, 0.001), -0.058372484963352928791, 1e-12);
  EXPECT_NEAR(f(0.03, 0.0), -0.51833087472967080312, 1e-12);
}

TEST(WeakF, ContinuityAndDomain) {
  const ThresholdParams p{0.05, 0.5, 6, 0.02, 0.05};
  for (double h : {1e-4, 1e-6, 1e-8}) {
    ThresholdParams q = p;
    q.rho1 += h;
    EXPECT_LT(std::abs(weak_F(q) - weak_F(p)), 1e3 * h);
  }
  EXPECT_EQ(code_of([] { weak_F({0.05, 0.5, 6, 0.06, 0.0}); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([] { weak_F({0.05, 0.5, 6, 0.0, 0.96}); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([] { weak_F({0.05, 0.3, 6, 0.05, 0.3}); }), ErrorCode::OutOfDomain);
  EXPECT_NEAR(ThresholdParams({0.05, 0.5, 6, 0, 0}).gamma1(), (1 - std::exp(-0.6)) * 0.5, 1e-15);
}

TEST(WeakMaxAlpha, FrozenValueAndSupCheck) {
  const double alpha = weak_max_alpha(0.5, 6);
  EXPECT_NEAR(alpha, 0.072956932783127, 1e-8);
  EXPECT_LT(weak_sup_F(alpha, 0.5, 6), 0.0);
  EXPECT_GE(weak_sup_F(alpha + 1e-6, 0.5, 6), 0.0);
}

TEST(WeakMaxAlpha, AgreesWithIndependentEstimate) {
  // tests/oracles/weak_strong_probe.py: 600-point grid plus Nelder-Mead.
  EXPECT_NEAR(weak_max_alpha(0.3, 4), 0.0183733156, 1e-6);
  EXPECT_NEAR(weak_max_alpha(0.7, 6), 0.1279752476, 1e-6);
}

TEST(WeakMaxAlpha, ErrorsAndPositivity) {
  EXPECT_EQ(code_of([] { weak_max_alpha(0.5, 2); }), ErrorCode::InvalidDegree);
  EXPECT_EQ(code_of([] { weak_max_alpha(1.0, 6); }), ErrorCode::OutOfDomain);
  WeakOptions coarse;
  coarse.grid = 100;
  coarse.alpha_tol = 1e-6;
  for (double beta : {0.1, 0.5, 0.9}) {
    EXPECT_GT(weak_max_alpha(beta, 3, coarse), 0.0);
  }
}
