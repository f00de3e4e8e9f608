#include <gtest/gtest.h>

#include <stdexcept>

#include "minexp/error.hpp"
#include "minexp/graph.hpp"
#include "minexp/kernels.hpp"

using namespace minexp;

namespace {

bool violates(const BipartiteGraph& g, const IndexSet& s, double ratio) {
  return static_cast<double>(neighbors(g, s).size()) < ratio * static_cast<double>(s.size()) - 1e-9;
}

}  // namespace

TEST(Combinations, UnrankMatchesEnumeration) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      IndexSet c(k);
      for (int i = 0; i < k; ++i) c[i] = i;
      std::uint64_t rank = 0;
      do {
        EXPECT_EQ(kernels::unrank_combination(n, k, rank), c);
        ++rank;
      } while (kernels::next_combination(c, n));
      EXPECT_EQ(static_cast<double>(rank), kernels::binomial(n, k));
    }
  }
  EXPECT_EQ(kernels::binomial(60, 9), 14783142660.0);
  EXPECT_EQ(kernels::binomial(5, 7), 0.0);
}

TEST(FirstFailure, SmallestIndexAndExceptions) {
  EXPECT_EQ(kernels::first_failure(100, [](std::int64_t i) { return i % 37 != 36 && i != 90; }), 36);
  EXPECT_EQ(kernels::first_failure(10, [](std::int64_t) { return true; }), 10);
  EXPECT_THROW(kernels::first_failure(50,
                                      [](std::int64_t i) {
                                        if (i == 7) throw std::runtime_error("boom");
                                        return true;
                                      }),
               std::runtime_error);
  EXPECT_EQ(kernels::first_failure(50,
                                   [](std::int64_t i) {
                                     if (i == 20) throw std::runtime_error("late");
                                     return i != 5;
                                   }),
            5);
}

TEST(ParallelKernels, AgreeWithSerialReference) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 8 + static_cast<int>(seed % 5);
    const int m = 5 + static_cast<int>(seed % 4);
    const int d = 2 + static_cast<int>(seed % 2);
    const BipartiteGraph g = random_left_regular(n, m, d, seed);
    for (int k = 1; k <= 5; ++k) {
      for (double ratio : {1.0, 0.75 * d, 1.0 * d - 0.5}) {
        const auto par = kernels::find_expansion_violation(g, k, ratio);
        const auto ser = kernels::serial::find_expansion_violation(g, k, ratio);
        ASSERT_EQ(par.has_value(), ser.has_value()) << "seed " << seed << " k " << k;
        if (par) {
          EXPECT_TRUE(violates(g, *par, ratio));
          EXPECT_LE(static_cast<int>(par->size()), k);
        }
      }
      const auto pd = kernels::min_deficiency(g, k);
      const auto sd = kernels::serial::min_deficiency(g, k);
      EXPECT_EQ(pd.value, sd.value) << "seed " << seed << " k " << k;
      EXPECT_EQ(static_cast<int>(neighbors(g, pd.witness).size()) - static_cast<int>(pd.witness.size()), pd.value);
    }
    const MeasurementMatrix a = perturb(g, 0.2, seed);
    for (int k = 1; k <= 5; ++k) {
      const auto pds = kernels::smallest_dependent_set(a.dense(), k, 1e-10);
      const auto sds = kernels::serial::smallest_dependent_set(a.dense(), k, 1e-10);
      ASSERT_EQ(pds.has_value(), sds.has_value()) << "seed " << seed << " k " << k;
      if (pds) EXPECT_EQ(*pds, *sds);
    }
  }
}

TEST(ParallelKernels, DependentSetFindsPlantedCircuit) {
  linalg::Matrix a = perturb(random_left_regular(10, 8, 3, 4), 0.3, 4).dense();
  a.col(6) = 0.5 * a.col(2) + 0.25 * a.col(8);
  const auto s = kernels::smallest_dependent_set(a, 4, 1e-10);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s, (IndexSet{2, 6, 8}));
  a.col(4).setZero();
  EXPECT_EQ(*kernels::smallest_dependent_set(a, 4, 1e-10), (IndexSet{4}));
}

TEST(ParallelKernels, NodeBudget) {
  const BipartiteGraph g = random_left_regular(40, 30, 6, 1);
  try {
    kernels::min_deficiency(g, 10, {1e3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(ParallelKernels, EmptyInputs) {
  const BipartiteGraph g(3, 1, {});
  EXPECT_FALSE(kernels::find_expansion_violation(g, 2, 1.0).has_value());
  EXPECT_EQ(kernels::min_deficiency(g, 2).value, std::numeric_limits<int>::max());
}
