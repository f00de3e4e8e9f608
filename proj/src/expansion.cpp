#include "minexp/expansion.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "minexp/error.hpp"
#include "minexp/random.hpp"

namespace minexp {

namespace {

void check_size(const BipartiteGraph& g, int k, const char* what) {
  if (k < 0 || k > g.n()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": size " + std::to_string(k) + " outside [0, " + std::to_string(g.n()) + "]");
  }
}

ExpansionResult sampled_check(const BipartiteGraph& g, int k, double ratio, const ExpansionOptions& options) {
  Rng rng(options.seed);
  std::uniform_int_distribution<int> size_dist(1, k);
  std::vector<Index> pool(g.n());
  std::iota(pool.begin(), pool.end(), 0);
  for (int t = 0; t < options.samples; ++t) {
    const int s = size_dist(rng);
    for (int e = 0; e < s; ++e) {
      std::uniform_int_distribution<int> pick(e, g.n() - 1);
      std::swap(pool[e], pool[pick(rng)]);
    }
    IndexSet subset(pool.begin(), pool.begin() + s);
    std::sort(subset.begin(), subset.end());
    if (static_cast<double>(neighbors(g, subset).size()) < ratio * s - 1e-9) {
      return {false, std::move(subset)};
    }
  }
  return {};
}

}  // namespace

ExpansionResult is_expander(const BipartiteGraph& g, int k, double eps, const ExpansionOptions& options) {
  check_size(g, k, "is_expander");
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "expansion eps must lie in [0, 1)");
  }
  const double ratio = (1.0 - eps) * g.d();
  if (k == 0) return {};
  if (options.mode == CheckMode::Sampled) return sampled_check(g, k, ratio, options);
  auto violation = kernels::find_expansion_violation(g, k, ratio, options.limits);
  if (violation) return {false, std::move(*violation)};
  return {};
}

kernels::Deficiency min_expansion_deficiency(const BipartiteGraph& g, int t, const kernels::SearchLimits& limits) {
  check_size(g, t, "min_expansion_deficiency");
  return kernels::min_deficiency(g, t, limits);
}

int minimal_expansion_size(const BipartiteGraph& g, int cap, const kernels::SearchLimits& limits) {
  cap = std::clamp(cap, 0, static_cast<int>(g.n()));
  // Contraction within size <= t is monotone in t: bisect on the largest
  // contraction-free t.
  int lo = 0, hi = cap;
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (kernels::find_expansion_violation(g, mid, 1.0, limits)) hi = mid - 1;
    else lo = mid;
  }
  return lo;
}

double expansion_epsilon(const BipartiteGraph& g, int k) {
  check_size(g, k, "expansion_epsilon");
  double count = 0.0;
  for (int s = 1; s <= k; ++s) count += kernels::binomial(g.n(), s);
  if (count > 1e8) throw Error(ErrorCode::TooLarge, "expansion_epsilon: too many subsets");
  double worst = 1.0;
  for (int s = 1; s <= k; ++s) {
    IndexSet c(s);
    std::iota(c.begin(), c.end(), 0);
    do {
      const double ratio = static_cast<double>(neighbors(g, c).size()) / (static_cast<double>(g.d()) * s);
      worst = std::min(worst, ratio);
    } while (kernels::next_combination(c, g.n()));
  }
  return 1.0 - worst;
}

}  // namespace minexp
