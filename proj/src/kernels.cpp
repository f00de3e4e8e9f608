#include "minexp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "minexp/error.hpp"

namespace minexp::kernels {

namespace {

constexpr double kExpansionSlack = 1e-9;

[[noreturn]] void too_large(const SearchLimits& limits) {
  throw Error(ErrorCode::TooLarge,
              "subset search exceeded " + std::to_string(static_cast<long long>(limits.max_nodes)) + " nodes");
}

// Incremental |Gamma(S)| bookkeeping for one search branch.
class Coverage {
 public:
  explicit Coverage(const BipartiteGraph& g) : g_(g), count_(g.m(), 0) {}

  void add(Index j) {
    for (Index r : g_.column(j))
      if (count_[r]++ == 0) ++size_;
  }
  void remove(Index j) {
    for (Index r : g_.column(j))
      if (--count_[r] == 0) --size_;
  }
  int size() const { return size_; }

 private:
  const BipartiteGraph& g_;
  std::vector<int> count_;
  int size_ = 0;
};

struct BranchOutcome {
  bool exceeded = false;
  std::optional<IndexSet> hit;
};

class ViolationSearch {
 public:
  ViolationSearch(const BipartiteGraph& g, int max_size, double ratio, double budget,
                  const std::atomic<Index>& stop_after)
      : g_(g), cover_(g), max_size_(max_size), ratio_(ratio), budget_(budget), stop_after_(stop_after) {}

  BranchOutcome run(Index first) {
    BranchOutcome out;
    path_.assign(1, first);
    cover_.add(first);
    try {
      if (visit(first)) out.hit = path_;
    } catch (const Budget&) {
      out.exceeded = true;
    }
    return out;
  }

 private:
  struct Budget {};

  bool violates() const { return cover_.size() < ratio_ * static_cast<double>(path_.size()) - kExpansionSlack; }

  bool visit(Index first) {
    if (++nodes_ > budget_) throw Budget{};
    if (violates()) return true;
    if (static_cast<int>(path_.size()) >= max_size_) return false;
    if (cover_.size() >= ratio_ * max_size_ - kExpansionSlack) return false;
    if (stop_after_.load(std::memory_order_relaxed) < first) return false;
    for (Index j = path_.back() + 1; j < g_.n(); ++j) {
      path_.push_back(j);
      cover_.add(j);
      const bool found = visit(first);
      if (found) return true;
      cover_.remove(j);
      path_.pop_back();
    }
    return false;
  }

  const BipartiteGraph& g_;
  Coverage cover_;
  int max_size_;
  double ratio_;
  double budget_;
  const std::atomic<Index>& stop_after_;
  IndexSet path_;
  double nodes_ = 0;
};

class DeficiencySearch {
 public:
  DeficiencySearch(const BipartiteGraph& g, int max_size, double budget)
      : g_(g), cover_(g), max_size_(max_size), budget_(budget) {}

  // Returns false if the node budget ran out.
  bool run(Index first, Deficiency& best) {
    path_.assign(1, first);
    cover_.add(first);
    best_ = &best;
    try {
      visit();
    } catch (const Budget&) {
      return false;
    }
    return true;
  }

 private:
  struct Budget {};

  void visit() {
    if (++nodes_ > budget_) throw Budget{};
    const int s = static_cast<int>(path_.size());
    const int value = cover_.size() - s;
    if (value < best_->value) {
      best_->value = value;
      best_->witness = path_;
    }
    if (s >= max_size_) return;
    // Each added column raises |S| by one and |Gamma| by at least zero.
    if (cover_.size() - max_size_ >= best_->value) return;
    for (Index j = path_.back() + 1; j < g_.n(); ++j) {
      path_.push_back(j);
      cover_.add(j);
      visit();
      cover_.remove(j);
      path_.pop_back();
    }
  }

  const BipartiteGraph& g_;
  Coverage cover_;
  int max_size_;
  double budget_;
  IndexSet path_;
  Deficiency* best_ = nullptr;
  double nodes_ = 0;
};

class DependentSearch {
 public:
  DependentSearch(const linalg::Matrix& a, int max_size, double tol, double budget)
      : a_(a), max_size_(max_size), tol_(tol), budget_(budget), q_(a.rows(), max_size), norms_(a.cols()) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) norms_[j] = a.col(j).norm();
  }

  // Smallest dependent set within this branch, lexicographically first
  // among equal sizes. Returns false if the budget ran out.
  bool run(Index first, std::optional<IndexSet>& best) {
    best_ = &best;
    path_.clear();
    try {
      extend(first);
    } catch (const Budget&) {
      return false;
    }
    return true;
  }

 private:
  struct Budget {};

  int limit() const { return best_->has_value() ? static_cast<int>((*best_)->size()) - 1 : max_size_; }

  // Try to append column j to the current (independent) path.
  void extend(Index j) {
    if (++nodes_ > budget_) throw Budget{};
    const int s = static_cast<int>(path_.size());
    if (s + 1 > limit()) return;
    linalg::Vector v = a_.col(j);
    if (s > 0) {
      auto basis = q_.leftCols(s);
      v -= basis * (basis.transpose() * v);
      v -= basis * (basis.transpose() * v);
    }
    const double res = v.norm();
    if (res <= tol_ * norms_[j] || norms_[j] == 0.0) {
      IndexSet found = path_;
      found.push_back(j);
      *best_ = std::move(found);
      return;
    }
    q_.col(s) = v / res;
    path_.push_back(j);
    for (Index next = j + 1; next < a_.cols(); ++next) {
      if (static_cast<int>(path_.size()) + 1 > limit()) break;
      extend(next);
    }
    path_.pop_back();
  }

  const linalg::Matrix& a_;
  int max_size_;
  double tol_;
  double budget_;
  linalg::Matrix q_;
  std::vector<double> norms_;
  IndexSet path_;
  std::optional<IndexSet>* best_ = nullptr;
  double nodes_ = 0;
};

}  // namespace

std::optional<IndexSet> find_expansion_violation(const BipartiteGraph& g, int max_size, double ratio,
                                                 const SearchLimits& limits) {
  const Index n = g.n();
  if (max_size < 1 || n == 0) return std::nullopt;
  std::atomic<Index> best_first{n};
  std::atomic<Index> first_exceeded{n};
  std::vector<std::optional<IndexSet>> hits(n);

#pragma omp parallel for schedule(dynamic, 1)
  for (Index f = 0; f < n; ++f) {
    if (f > best_first.load()) continue;
    ViolationSearch search(g, max_size, ratio, limits.max_nodes, best_first);
    BranchOutcome out = search.run(f);
    if (out.exceeded) {
      Index cur = first_exceeded.load();
      while (f < cur && !first_exceeded.compare_exchange_weak(cur, f)) {
      }
    } else if (out.hit) {
      hits[f] = std::move(out.hit);
      Index cur = best_first.load();
      while (f < cur && !best_first.compare_exchange_weak(cur, f)) {
      }
    }
  }
  // Every branch below best_first ran to completion or exhausted its budget.
  if (first_exceeded.load() < best_first.load()) too_large(limits);
  if (best_first.load() < n) return hits[best_first.load()];
  return std::nullopt;
}

Deficiency min_deficiency(const BipartiteGraph& g, int max_size, const SearchLimits& limits) {
  const Index n = g.n();
  Deficiency result;
  if (max_size < 1 || n == 0) return result;
  std::vector<Deficiency> per_first(n);
  std::atomic<bool> exceeded{false};

#pragma omp parallel for schedule(dynamic, 1)
  for (Index f = 0; f < n; ++f) {
    if (exceeded.load()) continue;
    DeficiencySearch search(g, max_size, limits.max_nodes);
    if (!search.run(f, per_first[f])) exceeded = true;
  }
  if (exceeded) too_large(limits);
  for (Index f = 0; f < n; ++f) {
    if (per_first[f].value < result.value) result = per_first[f];
  }
  return result;
}

std::optional<IndexSet> smallest_dependent_set(const linalg::Matrix& a, int max_size, double tol,
                                               const SearchLimits& limits) {
  const Index n = static_cast<Index>(a.cols());
  if (max_size < 1 || n == 0) return std::nullopt;
  std::vector<std::optional<IndexSet>> per_first(n);
  std::atomic<bool> exceeded{false};

#pragma omp parallel for schedule(dynamic, 1)
  for (Index f = 0; f < n; ++f) {
    if (exceeded.load()) continue;
    DependentSearch search(a, max_size, tol, limits.max_nodes);
    if (!search.run(f, per_first[f])) exceeded = true;
  }
  if (exceeded) too_large(limits);
  std::optional<IndexSet> best;
  for (Index f = 0; f < n; ++f) {
    if (per_first[f] && (!best || per_first[f]->size() < best->size())) best = per_first[f];
  }
  return best;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

IndexSet unrank_combination(int n, int k, std::uint64_t rank) {
  IndexSet c;
  c.reserve(k);
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    for (int v = next; v < n; ++v) {
      const auto block = static_cast<std::uint64_t>(binomial(n - v - 1, k - slot - 1));
      if (rank < block) {
        c.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return c;
}

bool next_combination(IndexSet& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

namespace serial {

namespace {

template <class Visit>
void for_each_subset_by_size(int n, int max_size, Visit&& visit) {
  for (int s = 1; s <= std::min(max_size, n); ++s) {
    IndexSet c(s);
    for (int i = 0; i < s; ++i) c[i] = i;
    do {
      if (!visit(c)) return;
    } while (next_combination(c, n));
  }
}

}  // namespace

std::optional<IndexSet> find_expansion_violation(const BipartiteGraph& g, int max_size, double ratio) {
  std::optional<IndexSet> out;
  for_each_subset_by_size(g.n(), max_size, [&](const IndexSet& s) {
    const auto gamma = neighbors(g, s).size();
    if (static_cast<double>(gamma) < ratio * static_cast<double>(s.size()) - kExpansionSlack) {
      out = s;
      return false;
    }
    return true;
  });
  return out;
}

Deficiency min_deficiency(const BipartiteGraph& g, int max_size) {
  Deficiency best;
  for_each_subset_by_size(g.n(), max_size, [&](const IndexSet& s) {
    const int value = static_cast<int>(neighbors(g, s).size()) - static_cast<int>(s.size());
    if (value < best.value) {
      best.value = value;
      best.witness = s;
    }
    return true;
  });
  return best;
}

std::optional<IndexSet> smallest_dependent_set(const linalg::Matrix& a, int max_size, double tol) {
  std::optional<IndexSet> out;
  for_each_subset_by_size(static_cast<int>(a.cols()), max_size, [&](const IndexSet& s) {
    linalg::Matrix sub(a.rows(), static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(s[i]);
    if (linalg::column_rank(sub, tol) < static_cast<int>(s.size())) {
      out = s;
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace serial

}  // namespace minexp::kernels
