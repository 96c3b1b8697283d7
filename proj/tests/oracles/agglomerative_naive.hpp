#pragma once

// Constrained agglomerative clustering that rescans every cluster pair from
// scratch at each step: linkage from the unit-level similarities (or cluster
// centroids for Ward), constraint kernel from dense powers of the contracted
// cluster adjacency. In fixed mode the linkage runs over member pairs of the
// unit-level product S o S_c instead. O(n^3) per step; meant for n <= 30.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

enum class Link { single, complete, upgma, ward };
enum class Kernel { truncated, binarized };
enum class Update { recompute, fixed };

struct NaiveMerge {
  int first;
  int second;
  double value;
  bool forced;
};

using Matrix = std::vector<std::vector<double>>;

// sum_{m <= delta} A^m / m! by dense products.
inline Matrix power_sum(const Matrix& a, int delta) {
  const std::size_t n = a.size();
  Matrix term(n, std::vector<double>(n, 0.0)), acc(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) term[i][i] = acc[i][i] = 1.0;
  for (int m = 1; m <= delta; ++m) {
    Matrix next(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (term[i][k] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += term[i][k] * a[k][j];
      }
    }
    for (auto& row : next) {
      for (double& x : row) x /= m;
    }
    term = next;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) acc[i][j] += term[i][j];
    }
  }
  return acc;
}

inline std::vector<NaiveMerge> naive_agglomerative(const Matrix& features, const Matrix& similarity,
                                                   const Matrix& adjacency, Link link, Kernel kernel, int delta,
                                                   Update update = Update::recompute) {
  const int n = static_cast<int>(similarity.size());
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) clusters.push_back({i});

  Matrix unit_kernel;
  if (update == Update::fixed) {
    unit_kernel = power_sum(adjacency, delta);
    if (kernel == Kernel::binarized) {
      for (auto& row : unit_kernel) {
        for (double& x : row) x = x > 0.0 ? 1.0 : 0.0;
      }
    }
  }

  // Linkage over member pairs of `sim`.
  auto pair_link = [&](const Matrix& sim, const std::vector<int>& a, const std::vector<int>& b) {
    double best = link == Link::single ? -1.0 : std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int u : a) {
      for (int v : b) {
        const double s = sim[u][v];
        if (link == Link::single) best = std::max(best, s);
        if (link == Link::complete) best = std::min(best, s);
        sum += s;
      }
    }
    return link == Link::upgma ? sum / (a.size() * b.size()) : best;
  };
  Matrix product;
  if (update == Update::fixed) {
    product = similarity;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) product[i][j] *= unit_kernel[i][j];
    }
  }

  auto feature_link = [&](const std::vector<int>& a, const std::vector<int>& b) {
    if (link == Link::ward) {
      const std::size_t d = features[0].size();
      std::vector<double> ma(d, 0.0), mb(d, 0.0);
      for (int u : a) {
        for (std::size_t c = 0; c < d; ++c) ma[c] += features[u][c] / a.size();
      }
      for (int u : b) {
        for (std::size_t c = 0; c < d; ++c) mb[c] += features[u][c] / b.size();
      }
      double dist = 0.0;
      for (std::size_t c = 0; c < d; ++c) dist += (ma[c] - mb[c]) * (ma[c] - mb[c]);
      const double na = a.size(), nb = b.size();
      return na * nb / (na + nb) * dist;
    }
    return pair_link(similarity, a, b);
  };

  std::vector<NaiveMerge> log;
  while (clusters.size() > 1) {
    const std::size_t m = clusters.size();
    Matrix ck;
    if (update == Update::recompute) {
      Matrix cadj(m, std::vector<double>(m, 0.0));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (i == j) continue;
          for (int u : clusters[i]) {
            for (int v : clusters[j]) {
              if (adjacency[u][v] > 0.0) cadj[i][j] = 1.0;
            }
          }
        }
      }
      ck = power_sum(cadj, delta);
      if (kernel == Kernel::binarized) {
        for (auto& row : ck) {
          for (double& x : row) x = x > 0.0 ? 1.0 : 0.0;
        }
      }
    } else {
      ck.assign(m, std::vector<double>(m, 0.0));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          for (int u : clusters[i]) {
            for (int v : clusters[j]) ck[i][j] = std::max(ck[i][j], unit_kernel[u][v]);
          }
        }
      }
    }

    int bi = -1, bj = -1, fi = -1, fj = -1;
    double bv = 0.0, fv = 0.0;
    const bool ward = link == Link::ward;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double f = feature_link(clusters[i], clusters[j]);
        const double c = ck[i][j];
        const double score = ward ? f : update == Update::fixed ? pair_link(product, clusters[i], clusters[j]) : f * c;
        const bool eligible = ward ? c > 0.0 : score > 0.0;
        const bool better = ward ? score < bv : score > bv;
        if (eligible && (bi < 0 || better)) bi = static_cast<int>(i), bj = static_cast<int>(j), bv = score;
        const bool fbetter = ward ? f < fv : f > fv;
        if (fi < 0 || fbetter) fi = static_cast<int>(i), fj = static_cast<int>(j), fv = f;
      }
    }
    const bool forced = bi < 0;
    const int i = forced ? fi : bi;
    const int j = forced ? fj : bj;
    log.push_back({clusters[i].front(), clusters[j].front(), forced ? fv : bv, forced});
    clusters[i].insert(clusters[i].end(), clusters[j].begin(), clusters[j].end());
    std::sort(clusters[i].begin(), clusters[i].end());
    clusters.erase(clusters.begin() + j);
  }
  return log;
}

}  // namespace oracle
