#include "regionalize/constraint_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include <Eigen/Sparse>

#include "regionalize/error.hpp"

namespace regionalize {

namespace {

Eigen::SparseMatrix<double> sparse_adjacency(const ConstraintGraph& g) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count());
  for (const auto& [a, b] : g.edges()) {
    triplets.emplace_back(a, b, 1.0);
    triplets.emplace_back(b, a, 1.0);
  }
  Eigen::SparseMatrix<double> c(g.size(), g.size());
  c.setFromTriplets(triplets.begin(), triplets.end());
  return c;
}

}  // namespace

ConstraintGraph::ConstraintGraph(int n, std::span<const Edge> edges) {
  if (n < 0) throw InvalidArgument("vertex count must be nonnegative");
  adjacency_.resize(static_cast<std::size_t>(n));
  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw DataError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (a == b) throw DataError("self-loop on vertex " + std::to_string(a));
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool ConstraintGraph::adjacent(int u, int v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Eigen::MatrixXd ConstraintGraph::adjacency_matrix() const {
  const int n = size();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : edges_) {
    c(a, b) = 1.0;
    c(b, a) = 1.0;
  }
  return c;
}

std::vector<int> ConstraintGraph::hop_distances(int source, int max_depth) const {
  const int sources[] = {source};
  if (max_depth < 0) return hop_distances(sources);

  std::vector<int> dist(static_cast<std::size_t>(size()), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int dv = dist[static_cast<std::size_t>(v)];
    if (dv == max_depth) continue;
    for (int w : neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dv + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> ConstraintGraph::hop_distances(std::span<const int> sources) const {
  std::vector<int> dist(static_cast<std::size_t>(size()), -1);
  std::deque<int> queue;
  for (int s : sources) {
    if (dist[static_cast<std::size_t>(s)] < 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

ConstraintKernel linear_kernel(const ConstraintGraph& g) {
  return {KernelKind::linear, 0, g.adjacency_matrix()};
}

ConstraintKernel truncated_exponential_kernel(const ConstraintGraph& g, int delta) {
  if (delta < 0) throw InvalidArgument("delta must be nonnegative");
  const int n = g.size();
  const Eigen::SparseMatrix<double> c = sparse_adjacency(g);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int m = 1; m <= delta; ++m) {
    term = (term * c) / static_cast<double>(m);
    const double term_max = term.cwiseAbs().maxCoeff();
    const bool negligible = term_max < 1e-15 * sum.maxCoeff();
    const bool new_support = ((term.array() > 0.0) && (sum.array() == 0.0)).any();
    sum += term;
    if (negligible && !new_support) break;
  }
  Eigen::MatrixXd sym = 0.5 * (sum + sum.transpose());
  return {KernelKind::truncated, delta, std::move(sym)};
}

ConstraintKernel binarized_kernel(const ConstraintGraph& g, int delta) {
  if (delta < 0) throw InvalidArgument("delta must be nonnegative");
  const int n = g.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto dist = g.hop_distances(i, delta);
    for (int j = 0; j < n; ++j) {
      if (dist[static_cast<std::size_t>(j)] >= 0) s(i, j) = 1.0;
    }
  }
  return {KernelKind::binarized, delta, std::move(s)};
}

ConstraintKernel exponential_kernel(const ConstraintGraph& g, double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  const int n = g.size();
  const Eigen::SparseMatrix<double> c = sparse_adjacency(g);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int m = 1;; ++m) {
    term = (term * c) / static_cast<double>(m);
    if (term.size() == 0 || term.cwiseAbs().maxCoeff() < tolerance) break;
    sum += term;
  }
  // Rounding in the products can break exact symmetry.
  Eigen::MatrixXd sym = 0.5 * (sum + sum.transpose());
  return {KernelKind::exponential, 0, std::move(sym)};
}

ConstraintKernel hop_kernel(const ConstraintGraph& g, KernelKind kind, int delta) {
  switch (kind) {
    case KernelKind::truncated:
      return truncated_exponential_kernel(g, delta);
    case KernelKind::binarized:
      return binarized_kernel(g, delta);
    default:
      throw InvalidArgument("hop kernel must be truncated or binarized");
  }
}

int diameter(const ConstraintGraph& g) {
  const auto parts = components(g);
  if (parts.size() > 1) {
    throw DataError("constraint graph is disconnected (" + std::to_string(parts.size()) +
                    " components); diameter is undefined");
  }
  int best = 0;
  for (int v = 0; v < g.size(); ++v) {
    const auto dist = g.hop_distances(v);
    best = std::max(best, *std::max_element(dist.begin(), dist.end()));
  }
  return best;
}

std::vector<std::vector<int>> components(const ConstraintGraph& g, std::span<const int> subset) {
  const int n = g.size();
  // 0 = outside subset, 1 = unvisited member, 2 = visited
  std::vector<char> state(static_cast<std::size_t>(n), 0);
  for (int v : subset) {
    if (v < 0 || v >= n) throw InvalidArgument("subset vertex " + std::to_string(v) + " out of range");
    state[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<int> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end());

  std::vector<std::vector<int>> out;
  for (int start : order) {
    if (state[static_cast<std::size_t>(start)] != 1) continue;
    std::vector<int> comp{start};
    state[static_cast<std::size_t>(start)] = 2;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int w : g.neighbors(comp[head])) {
        if (state[static_cast<std::size_t>(w)] == 1) {
          state[static_cast<std::size_t>(w)] = 2;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::vector<int>> components(const ConstraintGraph& g) {
  std::vector<int> all(static_cast<std::size_t>(g.size()));
  std::iota(all.begin(), all.end(), 0);
  return components(g, all);
}

bool is_connected(const ConstraintGraph& g) { return components(g).size() <= 1; }

}  // namespace regionalize
