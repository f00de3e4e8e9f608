#include "minexp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "minexp/error.hpp"
#include "minexp/random.hpp"

namespace minexp {

BipartiteGraph::BipartiteGraph(Index m, Index d, std::vector<IndexSet> columns)
    : m_(m), d_(d), columns_(std::move(columns)) {
  if (m < 1 || d < 1 || d > m) {
    throw Error(ErrorCode::InvalidDegree, "need 1 <= d <= m, got d=" + std::to_string(d) + " m=" + std::to_string(m));
  }
  rows_.assign(m, {});
  for (Index j = 0; j < n(); ++j) {
    const IndexSet& col = columns_[j];
    if (col.empty() || static_cast<Index>(col.size()) > d) {
      throw Error(ErrorCode::InvalidArgument, "column " + std::to_string(j) + " has " + std::to_string(col.size()) +
                                                  " entries, expected 1.." + std::to_string(d));
    }
    for (std::size_t e = 0; e < col.size(); ++e) {
      if (col[e] < 0 || col[e] >= m || (e > 0 && col[e] <= col[e - 1])) {
        throw Error(ErrorCode::InvalidArgument,
                    "column " + std::to_string(j) + " must list distinct ascending rows in [0, m)");
      }
      rows_[col[e]].push_back(j);
    }
  }
}

bool BipartiteGraph::is_left_regular() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [this](const IndexSet& c) { return static_cast<Index>(c.size()) == d_; });
}

linalg::Matrix BipartiteGraph::adjacency() const {
  linalg::Matrix a = linalg::Matrix::Zero(m_, n());
  for (Index j = 0; j < n(); ++j)
    for (Index r : columns_[j]) a(r, j) = 1.0;
  return a;
}

BipartiteGraph BipartiteGraph::induced(const IndexSet& left) const {
  std::vector<IndexSet> cols;
  cols.reserve(left.size());
  for (Index j : left) cols.push_back(columns_.at(j));
  return BipartiteGraph(m_, d_, std::move(cols));
}

BipartiteGraph random_left_regular(Index n, Index m, Index d, std::uint64_t seed, ColumnSampling sampling) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "n and m must be positive");
  if (d < 1 || d > m) {
    throw Error(ErrorCode::InvalidDegree, "need 1 <= d <= m, got d=" + std::to_string(d) + " m=" + std::to_string(m));
  }
  Rng rng(seed);
  std::vector<IndexSet> columns(n);
  std::vector<Index> pool(m);
  for (Index j = 0; j < n; ++j) {
    IndexSet col;
    if (sampling == ColumnSampling::Distinct) {
      // Partial Fisher-Yates over a fresh identity pool.
      std::iota(pool.begin(), pool.end(), 0);
      for (Index e = 0; e < d; ++e) {
        std::uniform_int_distribution<Index> pick(e, m - 1);
        std::swap(pool[e], pool[pick(rng)]);
      }
      col.assign(pool.begin(), pool.begin() + d);
    } else {
      std::uniform_int_distribution<Index> pick(0, m - 1);
      for (Index e = 0; e < d; ++e) col.push_back(pick(rng));
    }
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
    columns[j] = std::move(col);
  }
  return BipartiteGraph(m, d, std::move(columns));
}

IndexSet neighbors(const BipartiteGraph& g, std::span<const Index> s) {
  std::vector<char> hit(g.m(), 0);
  for (Index j : s)
    for (Index r : g.column(j)) hit[r] = 1;
  IndexSet out;
  for (Index r = 0; r < g.m(); ++r)
    if (hit[r]) out.push_back(r);
  return out;
}

IndexSet left_neighbors(const BipartiteGraph& g, std::span<const Index> t) {
  std::vector<char> hit(g.n(), 0);
  for (Index r : t)
    for (Index j : g.rows()[r]) hit[j] = 1;
  IndexSet out;
  for (Index j = 0; j < g.n(); ++j)
    if (hit[j]) out.push_back(j);
  return out;
}

namespace {

linalg::Matrix build_dense(const BipartiteGraph& g, const std::vector<std::vector<double>>& w) {
  linalg::Matrix a = linalg::Matrix::Zero(g.m(), g.n());
  for (Index j = 0; j < g.n(); ++j) {
    auto col = g.column(j);
    for (std::size_t e = 0; e < col.size(); ++e) a(col[e], j) = w[j][e];
  }
  return a;
}

// Unit weights; a column with fewer than d distinct neighbours (sampled with
// repetition) spreads the column mass d evenly over them.
std::vector<std::vector<double>> unit_weights(const BipartiteGraph& g) {
  std::vector<std::vector<double>> w(g.n());
  for (Index j = 0; j < g.n(); ++j) {
    const auto size = g.column(j).size();
    w[j].assign(size, static_cast<double>(g.d()) / static_cast<double>(size));
  }
  return w;
}

}  // namespace

MeasurementMatrix::MeasurementMatrix(BipartiteGraph graph)
    : graph_(std::move(graph)), weights_(unit_weights(graph_)), epsilon1_(0.0), dense_(build_dense(graph_, weights_)) {}

MeasurementMatrix::MeasurementMatrix(BipartiteGraph graph, std::vector<std::vector<double>> weights, double epsilon1)
    : graph_(std::move(graph)), weights_(std::move(weights)), epsilon1_(epsilon1) {
  if (static_cast<Index>(weights_.size()) != graph_.n()) {
    throw Error(ErrorCode::InvalidArgument, "weights must have one entry per column");
  }
  const double d = graph_.d();
  for (Index j = 0; j < graph_.n(); ++j) {
    if (weights_[j].size() != graph_.column(j).size()) {
      throw Error(ErrorCode::InvalidArgument, "weights of column " + std::to_string(j) + " misaligned with graph");
    }
    double sum = 0.0;
    for (double w : weights_[j]) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite (column " + std::to_string(j) + ")");
      }
      sum += w;
    }
    if (std::abs(sum - d) > 1e-9 * d) {
      throw Error(ErrorCode::NotConstantColumnSum,
                  "column " + std::to_string(j) + " sums to " + std::to_string(sum) + ", expected " + std::to_string(d));
    }
  }
  dense_ = build_dense(graph_, weights_);
}

MeasurementMatrix perturb(const BipartiteGraph& g, double epsilon1, std::uint64_t seed) {
  if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) {
    throw Error(ErrorCode::InvalidEpsilon, "epsilon1 must lie in (0, 1), got " + std::to_string(epsilon1));
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> jitter(1.0 - epsilon1, 1.0 + epsilon1);
  const std::vector<std::vector<double>> base = unit_weights(g);
  std::vector<std::vector<double>> w(g.n());
  for (Index j = 0; j < g.n(); ++j) {
    w[j].resize(base[j].size());
    double sum = 0.0;
    for (std::size_t e = 0; e < w[j].size(); ++e) {
      w[j][e] = base[j][e] * jitter(rng);
      sum += w[j][e];
    }
    const double scale = g.d() / sum;
    for (double& x : w[j]) x *= scale;
  }
  return MeasurementMatrix(g, std::move(w), epsilon1);
}

}  // namespace minexp
