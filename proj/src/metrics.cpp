#include "regionalize/metrics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "regionalize/error.hpp"

namespace regionalize {

namespace {

void check_sizes(int expected, const Partition& p, const char* what) {
  if (p.size() != expected) {
    throw InvalidArgument(std::string(what) + ": partition covers " + std::to_string(p.size()) +
                          " units, expected " + std::to_string(expected));
  }
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

std::vector<double> region_ssw(const Eigen::MatrixXd& x, const Partition& p) {
  check_sizes(static_cast<int>(x.rows()), p, "ssw");
  const int k = p.k();
  Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(k, x.cols());
  const auto sizes = p.sizes();
  for (Eigen::Index i = 0; i < x.rows(); ++i) centroids.row(p[static_cast<int>(i)]) += x.row(i);
  for (int r = 0; r < k; ++r) centroids.row(r) /= static_cast<double>(sizes[static_cast<std::size_t>(r)]);
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int r = p[static_cast<int>(i)];
    out[static_cast<std::size_t>(r)] += (x.row(i) - centroids.row(r)).squaredNorm();
  }
  return out;
}

double ssw(const Eigen::MatrixXd& x, const Partition& p) {
  double total = 0.0;
  for (double v : region_ssw(x, p)) total += v;
  return total;
}

double pct_ml(const ConstraintGraph& g, const Partition& p) {
  check_sizes(g.size(), p, "pct_ml");
  if (g.edge_count() == 0) throw DataError("PctML is undefined for a graph without must-link edges");
  std::size_t internal = 0;
  for (const auto& [a, b] : g.edges()) {
    if (p[a] == p[b]) ++internal;
  }
  return static_cast<double>(internal) / static_cast<double>(g.edge_count());
}

Eigen::MatrixXi region_hop_distances(const ConstraintGraph& g, const Partition& p) {
  check_sizes(g.size(), p, "region distances");
  const int k = p.k();
  const auto members = p.members();
  Eigen::MatrixXi dist = Eigen::MatrixXi::Constant(k, k, -1);
  for (int i = 0; i < k; ++i) {
    const auto from = g.hop_distances(members[static_cast<std::size_t>(i)]);
    for (int j = 0; j < k; ++j) {
      int best = -1;
      for (int v : members[static_cast<std::size_t>(j)]) {
        const int dv = from[static_cast<std::size_t>(v)];
        if (dv >= 0 && (best < 0 || dv < best)) best = dv;
      }
      dist(i, j) = best;
    }
  }
  return dist;
}

Eigen::MatrixXd region_mst_path_lengths(const ConstraintGraph& g, const Partition& p) {
  const Eigen::MatrixXi w = region_hop_distances(g, p);
  const int k = p.k();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (w(i, j) < 0) throw DataError("regions are not connected through the constraint graph");
    }
  }

  // Prim on the complete region graph.
  std::vector<std::vector<std::pair<int, int>>> tree(static_cast<std::size_t>(k));
  std::vector<char> in_tree(static_cast<std::size_t>(k), 0);
  std::vector<int> best(static_cast<std::size_t>(k), std::numeric_limits<int>::max());
  std::vector<int> parent(static_cast<std::size_t>(k), -1);
  best[0] = 0;
  for (int step = 0; step < k; ++step) {
    int u = -1;
    for (int v = 0; v < k; ++v) {
      if (!in_tree[static_cast<std::size_t>(v)] && (u < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(u)])) u = v;
    }
    in_tree[static_cast<std::size_t>(u)] = 1;
    if (const int pu = parent[static_cast<std::size_t>(u)]; pu >= 0) {
      tree[static_cast<std::size_t>(u)].emplace_back(pu, w(u, pu));
      tree[static_cast<std::size_t>(pu)].emplace_back(u, w(u, pu));
    }
    for (int v = 0; v < k; ++v) {
      if (!in_tree[static_cast<std::size_t>(v)] && w(u, v) < best[static_cast<std::size_t>(v)]) {
        best[static_cast<std::size_t>(v)] = w(u, v);
        parent[static_cast<std::size_t>(v)] = u;
      }
    }
  }

  Eigen::MatrixXd lengths = Eigen::MatrixXd::Zero(k, k);
  for (int root = 0; root < k; ++root) {
    std::vector<int> stack{root};
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [v, weight] : tree[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = 1;
        lengths(root, v) = lengths(root, u) + weight;
        stack.push_back(v);
      }
    }
  }
  return lengths;
}

double contiguity_c(const ConstraintGraph& g, const Partition& p, double gamma) {
  check_sizes(g.size(), p, "contiguity");
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (!is_connected(g)) throw DataError("contiguity requires a connected constraint graph");
  // Region order fixes MST tie-breaks; order by lowest unit so c ignores label names.
  const Partition q = p.canonicalized();
  const auto sizes = q.sizes();
  const int k = q.k();
  const double n = g.size();

  double phi = 0.0;
  for (int s : sizes) phi += choose2(s);

  double nu = 0.0;
  if (k > 1) {
    const Eigen::MatrixXd l = region_mst_path_lengths(g, q);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        nu += static_cast<double>(sizes[static_cast<std::size_t>(i)]) * sizes[static_cast<std::size_t>(j)] /
              std::pow(l(i, j), gamma);
      }
    }
  }
  return (phi + nu) / choose2(n);
}

double cbalance(const Partition& p) {
  if (p.size() == 0) throw InvalidArgument("cbalance of an empty partition");
  double log_sum = 0.0;
  for (int s : p.sizes()) {
    if (s <= 0) throw InvalidArgument("cbalance requires nonempty regions");
    log_sum += std::log(static_cast<double>(s));
  }
  const double k = p.k();
  return k / p.size() * std::exp(log_sum / k);
}

double adjusted_rand(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) {
    throw InvalidArgument("adjusted Rand index needs partitions of equal length (" + std::to_string(p.size()) +
                          " vs " + std::to_string(q.size()) + ")");
  }
  std::map<std::pair<int, int>, long long> table;
  for (int i = 0; i < p.size(); ++i) ++table[{p[i], q[i]}];

  double index = 0.0;
  for (const auto& [cell, count] : table) index += choose2(static_cast<double>(count));
  double sum_a = 0.0;
  for (int s : p.sizes()) sum_a += choose2(s);
  double sum_b = 0.0;
  for (int s : q.sizes()) sum_b += choose2(s);

  const double total = choose2(p.size());
  const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

std::vector<bool> region_connectivity(const ConstraintGraph& g, const Partition& p) {
  check_sizes(g.size(), p, "region connectivity");
  std::vector<bool> out;
  for (const auto& members : p.members()) out.push_back(components(g, members).size() == 1);
  return out;
}

MetricReport evaluate(const Dataset& d, const Partition& p, double gamma) {
  MetricReport r;
  const auto per_ssw = region_ssw(d.features.values, p);
  const auto connected = region_connectivity(d.graph, p);
  const auto sizes = p.sizes();
  for (int i = 0; i < p.k(); ++i) {
    r.per_region.push_back({sizes[static_cast<std::size_t>(i)], per_ssw[static_cast<std::size_t>(i)],
                            connected[static_cast<std::size_t>(i)]});
    r.ssw += per_ssw[static_cast<std::size_t>(i)];
  }
  r.pct_ml = pct_ml(d.graph, p);
  r.contiguity_c = contiguity_c(d.graph, p, gamma);
  r.cbalance = cbalance(p);
  return r;
}

}  // namespace regionalize
