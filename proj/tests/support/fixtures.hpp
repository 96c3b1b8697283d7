#pragma once

// Random instances shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "regionalize/constraint_graph.hpp"
#include "regionalize/dataset.hpp"
#include "regionalize/random.hpp"

namespace fixtures {

using regionalize::ConstraintGraph;
using regionalize::Edge;
using regionalize::Rng;

// Random spanning tree plus each remaining pair with probability `extra`.
inline ConstraintGraph random_connected_graph(int n, double extra, Rng& rng) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.below(static_cast<std::size_t>(v))), v);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.uniform() < extra) edges.emplace_back(a, b);
    }
  }
  return ConstraintGraph(n, edges);
}

inline ConstraintGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return ConstraintGraph(n, edges);
}

inline ConstraintGraph lattice(int rows, int cols) {
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return ConstraintGraph(rows * cols, edges);
}

// A adjacent to B, C, D, E; spokes B-F, C-G, D-H, E-I; outer ring F-G-H-I.
// Matches every neighborhood fact stated for the nine-vertex example graph.
inline ConstraintGraph figure_one_graph() {
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 6}, {3, 7},
                                {4, 8}, {5, 6}, {6, 7}, {7, 8}, {8, 5}};
  return ConstraintGraph(9, edges);
}

inline Eigen::MatrixXd gaussian_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd x(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) x(i, j) = rng.normal();
  }
  return x;
}

// Dataset with already reduced features, ready for the clustering pipeline.
inline regionalize::Dataset reduced_dataset(const Eigen::MatrixXd& x, const ConstraintGraph& g) {
  regionalize::Dataset d;
  for (int i = 0; i < g.size(); ++i) d.unit_ids.push_back("u" + std::to_string(i));
  d.features.values = x;
  d.features.stage = regionalize::FeatureStage::reduced;
  for (int j = 0; j < x.cols(); ++j) d.features.names.push_back("pc" + std::to_string(j + 1));
  d.graph = g;
  return d;
}

// Labels in [0, k) with every region nonempty.
inline std::vector<int> random_labels(int n, int k, Rng& rng) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i < k ? i : static_cast<int>(rng.below(static_cast<std::size_t>(k)));
  for (int i = n - 1; i > 0; --i) std::swap(labels[static_cast<std::size_t>(i)], labels[rng.below(static_cast<std::size_t>(i + 1))]);
  return labels;
}

inline std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  }
  return out;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = 0.5 * static_cast<double>(i + j) + 1.0;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace fixtures
