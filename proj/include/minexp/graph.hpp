#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "minexp/linalg.hpp"

namespace minexp {

using Index = int;
using IndexSet = std::vector<Index>;  // sorted, distinct

/// Left-regular bipartite graph: n left nodes (signal coordinates, matrix
/// columns), m right nodes (measurements, matrix rows), left degree d.
///
/// Each column lists its distinct right neighbours in ascending order. A
/// column normally has exactly d of them; graphs sampled with repetition may
/// have fewer because repeated draws collapse onto one edge.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(Index m, Index d, std::vector<IndexSet> columns);

  Index n() const { return static_cast<Index>(columns_.size()); }
  Index m() const { return m_; }
  Index d() const { return d_; }

  std::span<const Index> column(Index j) const { return columns_[j]; }
  const std::vector<IndexSet>& columns() const { return columns_; }

  /// True when every column has exactly d distinct neighbours.
  bool is_left_regular() const;

  /// Left neighbours of every right node, ascending.
  const std::vector<IndexSet>& rows() const { return rows_; }

  /// 0/1 adjacency matrix, m x n.
  linalg::Matrix adjacency() const;

  /// Sub-graph keeping only the listed columns (same right side).
  BipartiteGraph induced(const IndexSet& left) const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.m_ == b.m_ && a.d_ == b.d_ && a.columns_ == b.columns_;
  }

 private:
  Index m_ = 0;
  Index d_ = 0;
  std::vector<IndexSet> columns_;
  std::vector<IndexSet> rows_;
};

/// Column sampling: distinct neighbours (default) or d draws with repetition.
enum class ColumnSampling { Distinct, WithRepetition };

/// Random left-d-regular graph; deterministic in `seed`. Throws InvalidDegree
/// if d > m or d < 1.
BipartiteGraph random_left_regular(Index n, Index m, Index d, std::uint64_t seed,
                                   ColumnSampling sampling = ColumnSampling::Distinct);

/// Gamma(S): union of the columns in s.
IndexSet neighbors(const BipartiteGraph& g, std::span<const Index> s);

/// Left nodes adjacent to any right node in t (the reversed graph).
IndexSet left_neighbors(const BipartiteGraph& g, std::span<const Index> t);

/// Weighted adjacency matrix sharing the graph's sparsity pattern, with every
/// column summing to d.
class MeasurementMatrix {
 public:
  /// Unit weights, i.e. the plain adjacency matrix.
  explicit MeasurementMatrix(BipartiteGraph graph);
  /// Per-edge weights aligned with graph.columns(). Throws
  /// NotConstantColumnSum when a column sum differs from d beyond 1e-9
  /// relative, InvalidArgument for non-positive weights.
  MeasurementMatrix(BipartiteGraph graph, std::vector<std::vector<double>> weights, double epsilon1);

  const BipartiteGraph& graph() const { return graph_; }
  Index n() const { return graph_.n(); }
  Index m() const { return graph_.m(); }
  Index d() const { return graph_.d(); }
  double epsilon1() const { return epsilon1_; }
  std::span<const double> weights(Index j) const { return weights_[j]; }

  /// Dense m x n matrix.
  const linalg::Matrix& dense() const { return dense_; }

 private:
  BipartiteGraph graph_;
  std::vector<std::vector<double>> weights_;
  double epsilon1_ = 0.0;
  linalg::Matrix dense_;
};

/// Draws each edge weight uniformly from [1 - epsilon1, 1 + epsilon1], then
/// rescales every column multiplicatively to sum to d. Throws InvalidEpsilon
/// unless 0 < epsilon1 < 1.
MeasurementMatrix perturb(const BipartiteGraph& g, double epsilon1, std::uint64_t seed);

}  // namespace minexp
