#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace regionalize {

using Edge = std::pair<int, int>;

/// Undirected must-link graph over spatial units. Edges connect adjacent
/// units; cannot-link edges are not represented.
///
/// Construction normalizes every edge to (min, max), drops duplicates and
/// rejects self-loops and out-of-range endpoints with DataError.
class ConstraintGraph {
 public:
  ConstraintGraph() = default;
  ConstraintGraph(int n, std::span<const Edge> edges);

  [[nodiscard]] int size() const { return static_cast<int>(adjacency_.size()); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  /// Sorted, with first < second.
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted neighbor list of `v`.
  [[nodiscard]] std::span<const int> neighbors(int v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  [[nodiscard]] int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  [[nodiscard]] bool adjacent(int u, int v) const;

  /// Dense 0/1 adjacency matrix C with zero diagonal.
  [[nodiscard]] Eigen::MatrixXd adjacency_matrix() const;

  /// BFS hop distances from `source`; -1 marks vertices that are unreachable or
  /// farther than `max_depth` (negative = unbounded).
  [[nodiscard]] std::vector<int> hop_distances(int source, int max_depth = -1) const;

  /// Multi-source variant: distance to the nearest of `sources`.
  [[nodiscard]] std::vector<int> hop_distances(std::span<const int> sources) const;

  friend bool operator==(const ConstraintGraph&, const ConstraintGraph&) = default;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<Edge> edges_;
};

enum class KernelKind { linear, exponential, truncated, binarized };

/// Spatial constraint kernel S_c derived from a constraint graph.
struct ConstraintKernel {
  KernelKind kind = KernelKind::linear;
  int delta = 0;  // hop radius; unused for linear and exponential
  Eigen::MatrixXd matrix;
};

/// S_c = C.
ConstraintKernel linear_kernel(const ConstraintGraph& g);

/// S_c = sum_{m=0}^{delta} C^m / m!.
///
/// Terms are accumulated by repeated multiplication with a running factorial
/// divisor. Accumulation stops early once a term's max-norm falls below
/// 1e-15 times the largest accumulated entry *and* the term adds no new
/// nonzero entries; the support therefore always equals the binarized kernel.
ConstraintKernel truncated_exponential_kernel(const ConstraintGraph& g, int delta);

/// S_c(i, j) = 1 iff hop distance(i, j) <= delta. Computed with one bounded BFS
/// per vertex; the diagonal is always 1.
ConstraintKernel binarized_kernel(const ConstraintGraph& g, int delta);

/// Partial sum of exp(C), stopping when the next term's max-norm < tolerance.
ConstraintKernel exponential_kernel(const ConstraintGraph& g, double tolerance);

/// Dispatches on `kind` (truncated or binarized) with hop radius `delta`.
ConstraintKernel hop_kernel(const ConstraintGraph& g, KernelKind kind, int delta);

/// Largest BFS hop distance over all vertex pairs. Throws DataError when the
/// graph is disconnected.
int diameter(const ConstraintGraph& g);

/// Connected components of the subgraph induced by `subset`, each sorted,
/// ordered by smallest member.
std::vector<std::vector<int>> components(const ConstraintGraph& g, std::span<const int> subset);

/// Connected components of the whole graph.
std::vector<std::vector<int>> components(const ConstraintGraph& g);

bool is_connected(const ConstraintGraph& g);

}  // namespace regionalize
