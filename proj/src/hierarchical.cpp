#include "regionalize/hierarchical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "regionalize/csv.hpp"
#include "regionalize/error.hpp"
#include "regionalize/metrics.hpp"

namespace regionalize {

const Partition& MergeTree::at(int k) const {
  if (k < 1 || k > max_level()) {
    throw InvalidArgument("merge tree has no level with " + std::to_string(k) + " regions");
  }
  return levels[static_cast<std::size_t>(k - 1)];
}

// ---------------------------------------------------------------------------
// HSSC

namespace {

struct Candidate {
  int id;
  double ssw;
  int size;
};

}  // namespace

MergeTree hssc(const Dataset& d, const MethodConfig& cfg, int k_max) {
  d.validate();
  return hssc(d.features.values, combined_affinity(d, cfg), cfg, k_max);
}

MergeTree hssc(const Eigen::MatrixXd& features, const AffinityMatrix& total, const MethodConfig& cfg, int k_max) {
  if (k_max < 1) throw InvalidArgument("k_max must be positive");
  if (cfg.kmeans_restarts < 1) throw InvalidArgument("kmeans_restarts must be positive");
  const int n = total.size();
  if (features.rows() != n) throw InvalidArgument("feature rows do not match the affinity size");

  MergeTree tree;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  tree.levels.push_back(Partition::single(n));

  for (int k = 1; k < k_max; ++k) {
    const Partition& current = tree.levels.back();
    const auto members = current.members();
    const auto per_ssw = region_ssw(features, current);

    std::vector<Candidate> order;
    for (int r = 0; r < k; ++r) {
      const int size = static_cast<int>(members[static_cast<std::size_t>(r)].size());
      if (size > 1) order.push_back({r, per_ssw[static_cast<std::size_t>(r)], size});
    }
    if (order.empty()) break;
    const auto worst = std::min_element(order.begin(), order.end(), [](const Candidate& a, const Candidate& b) {
      if (a.ssw != b.ssw) return a.ssw > b.ssw;
      if (a.size != b.size) return a.size > b.size;
      return a.id < b.id;
    });

    const auto& idx = members[static_cast<std::size_t>(worst->id)];
    const AffinityMatrix sub{total.values(idx, idx), AffinityKind::combined};
    const auto halves = spectral_cluster(sub, 2, cfg.kmeans_restarts, cfg.seed, cfg.normalize_rows);

    // Canonical k-means labels put the region's lowest-index unit in half 0.
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (halves.partition[static_cast<int>(i)] == 1) labels[static_cast<std::size_t>(idx[i])] = k;
    }
    tree.splits.push_back({k + 1, worst->id, k, worst->ssw});
    tree.levels.emplace_back(labels, k + 1);
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Agglomerative

void AgglomerativeConfig::validate() const {
  if (delta < 0) throw InvalidArgument("delta must be a nonnegative hop count");
  if (kernel != KernelKind::truncated && kernel != KernelKind::binarized) {
    throw InvalidArgument("agglomerative constraint kernel must be truncated or binarized");
  }
  if (sigma && !(*sigma > 0.0)) throw InvalidArgument("sigma must be positive");
}

std::string to_string(Linkage l) {
  switch (l) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::upgma: return "upgma";
    case Linkage::ward: return "ward";
  }
  return "?";
}

Linkage parse_linkage(const std::string& name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "upgma") return Linkage::upgma;
  if (name == "ward") return Linkage::ward;
  throw InvalidArgument("unknown linkage '" + name + "' (expected single, complete, upgma or ward)");
}

namespace {

// Cluster-level constraint kernel on the contracted graph, written into
// `kernel` at (id, id) positions of the active clusters.
void rebuild_kernel(const std::vector<int>& active, const std::vector<std::vector<int>>& neighbors,
                    KernelKind kind, int delta, Eigen::MatrixXd& kernel) {
  const auto m = active.size();
  std::vector<int> pos(static_cast<std::size_t>(kernel.rows()), -1);
  for (std::size_t i = 0; i < m; ++i) pos[static_cast<std::size_t>(active[i])] = static_cast<int>(i);

  if (kind == KernelKind::binarized) {
    std::vector<int> dist(m);
    std::vector<int> queue;
    queue.reserve(m);
    for (std::size_t s = 0; s < m; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      queue.assign(1, static_cast<int>(s));
      dist[s] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        if (dist[static_cast<std::size_t>(u)] == delta) continue;
        for (int nb : neighbors[static_cast<std::size_t>(active[static_cast<std::size_t>(u)])]) {
          const int v = pos[static_cast<std::size_t>(nb)];
          if (dist[static_cast<std::size_t>(v)] < 0) {
            dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
            queue.push_back(v);
          }
        }
      }
      for (std::size_t t = 0; t < m; ++t) kernel(active[s], active[t]) = dist[t] >= 0 ? 1.0 : 0.0;
    }
    return;
  }

  // Truncated exponential: sum_{m <= delta} C^m e_s / m! by sparse propagation.
  std::vector<double> walk(m), next(m), acc(m);
  for (std::size_t s = 0; s < m; ++s) {
    std::fill(walk.begin(), walk.end(), 0.0);
    walk[s] = 1.0;
    acc = walk;
    for (int step = 1; step <= delta; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t u = 0; u < m; ++u) {
        if (walk[u] == 0.0) continue;
        for (int nb : neighbors[static_cast<std::size_t>(active[u])]) next[static_cast<std::size_t>(pos[static_cast<std::size_t>(nb)])] += walk[u];
      }
      const double inv = 1.0 / static_cast<double>(step);
      for (std::size_t t = 0; t < m; ++t) {
        walk[t] = next[t] * inv;
        acc[t] += walk[t];
      }
    }
    for (std::size_t t = 0; t < m; ++t) kernel(active[s], active[t]) = acc[t];
  }
  // Walk sums are symmetric in exact arithmetic; keep the upper triangle.
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) kernel(active[b], active[a]) = kernel(active[a], active[b]);
  }
}

}  // namespace

MergeTree agglomerative(const Dataset& d, const AgglomerativeConfig& cfg) {
  d.validate();
  cfg.validate();
  const double sigma = cfg.sigma ? *cfg.sigma : median_sigma(d.features.values);
  return agglomerate(d.features.values, rbf_similarity(d.features, sigma), d.graph, cfg);
}

MergeTree agglomerate(const Eigen::MatrixXd& features, const AffinityMatrix& similarity, const ConstraintGraph& g,
                      const AgglomerativeConfig& cfg) {
  cfg.validate();
  const int n = g.size();
  if (similarity.size() != n || features.rows() != n) {
    throw InvalidArgument("features, similarity and constraint graph sizes disagree");
  }
  const bool ward = cfg.linkage == Linkage::ward;

  // Feature linkage: similarities, or half squared distances for Ward.
  Eigen::MatrixXd link(n, n);
  if (ward) {
    const Eigen::MatrixXd xt = features.transpose();
    for (int j = 0; j < n; ++j) {
      link(j, j) = 0.0;
      for (int i = j + 1; i < n; ++i) {
        const double v = 0.5 * (xt.col(i) - xt.col(j)).squaredNorm();
        link(i, j) = v;
        link(j, i) = v;
      }
    }
  } else {
    link = similarity.values;
  }

  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);
  std::vector<int> size(static_cast<std::size_t>(n), 1);
  std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    neighbors[static_cast<std::size_t>(v)].assign(nb.begin(), nb.end());
  }

  Eigen::MatrixXd kernel(n, n);
  rebuild_kernel(active, neighbors, cfg.kernel, cfg.delta, kernel);

  // Fixed mode: linkage on the unit-level combined similarity.
  const bool fixed = cfg.update == ConstraintUpdate::fixed;
  Eigen::MatrixXd combined;
  if (fixed && !ward) combined = link.cwiseProduct(kernel);

  std::vector<int> owner(static_cast<std::size_t>(n));
  std::iota(owner.begin(), owner.end(), 0);
  std::vector<Partition> by_level_desc;  // levels n, n - 1, ..., 1
  by_level_desc.push_back(Partition::canonical(owner));

  MergeTree tree;
  while (active.size() > 1) {
    // Best eligible pair, then the forced fallback over all pairs.
    int best_a = -1, best_b = -1;
    double best_value = 0.0;
    int free_a = -1, free_b = -1;
    double free_value = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const int a = active[i];
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const int b = active[j];
        const double f = link(a, b);
        const double c = kernel(a, b);
        if (ward) {
          if (c > 0.0 && (best_a < 0 || f < best_value)) {
            best_a = a, best_b = b, best_value = f;
          }
          if (free_a < 0 || f < free_value) free_a = a, free_b = b, free_value = f;
        } else {
          const double t = fixed ? combined(a, b) : f * c;
          if (t > 0.0 && (best_a < 0 || t > best_value)) {
            best_a = a, best_b = b, best_value = t;
          }
          if (free_a < 0 || f > free_value) free_a = a, free_b = b, free_value = f;
        }
      }
    }
    const bool forced = best_a < 0;
    const int a = forced ? free_a : best_a;
    const int b = forced ? free_b : best_b;
    const double value = forced ? free_value : best_value;

    const double na = size[static_cast<std::size_t>(a)];
    const double nb = size[static_cast<std::size_t>(b)];
    const double dab = link(a, b);
    auto update = [&](Eigen::MatrixXd& m, int x) {
      const double fa = m(a, x);
      const double fb = m(b, x);
      double merged = 0.0;
      switch (cfg.linkage) {
        case Linkage::single: merged = std::max(fa, fb); break;
        case Linkage::complete: merged = std::min(fa, fb); break;
        case Linkage::upgma: merged = (na * fa + nb * fb) / (na + nb); break;
        case Linkage::ward: {
          const double nx = size[static_cast<std::size_t>(x)];
          merged = ((na + nx) * fa + (nb + nx) * fb - nx * dab) / (na + nb + nx);
          break;
        }
      }
      m(a, x) = merged;
      m(x, a) = merged;
    };
    for (int x : active) {
      if (x == a || x == b) continue;
      update(link, x);
      if (!fixed) continue;
      if (ward) {
        const double k = std::max(kernel(a, x), kernel(b, x));
        kernel(a, x) = k;
        kernel(x, a) = k;
      } else {
        update(combined, x);
      }
    }
    size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
    active.erase(std::find(active.begin(), active.end(), b));

    // Contract b into a in the cluster graph.
    auto& na_list = neighbors[static_cast<std::size_t>(a)];
    for (int x : neighbors[static_cast<std::size_t>(b)]) {
      if (x == a) continue;
      auto& xl = neighbors[static_cast<std::size_t>(x)];
      xl.erase(std::find(xl.begin(), xl.end(), b));
      if (std::find(xl.begin(), xl.end(), a) == xl.end()) xl.insert(std::lower_bound(xl.begin(), xl.end(), a), a);
      if (std::find(na_list.begin(), na_list.end(), x) == na_list.end()) {
        na_list.insert(std::lower_bound(na_list.begin(), na_list.end(), x), x);
      }
    }
    if (auto it = std::find(na_list.begin(), na_list.end(), b); it != na_list.end()) na_list.erase(it);
    neighbors[static_cast<std::size_t>(b)].clear();

    if (cfg.update == ConstraintUpdate::recompute) {
      rebuild_kernel(active, neighbors, cfg.kernel, cfg.delta, kernel);
    }

    for (auto& o : owner) {
      if (o == b) o = a;
    }
    const int level = static_cast<int>(active.size());
    tree.merges.push_back({level, a, b, value, forced});
    by_level_desc.push_back(Partition::canonical(owner));
  }

  tree.levels.assign(by_level_desc.rbegin(), by_level_desc.rend());
  return tree;
}

// ---------------------------------------------------------------------------
// Replay and serialization

std::vector<Partition> replay_merges(int n, std::span<const MergeRecord> merges) {
  std::vector<int> owner(static_cast<std::size_t>(n));
  std::iota(owner.begin(), owner.end(), 0);
  std::vector<Partition> levels{Partition::canonical(owner)};
  for (const auto& m : merges) {
    if (m.first < 0 || m.second >= n || m.first >= m.second) {
      throw DataError("invalid merge record (" + std::to_string(m.first) + ", " + std::to_string(m.second) + ")");
    }
    bool found = false;
    for (auto& o : owner) {
      if (o == m.second) {
        o = m.first;
        found = true;
      }
    }
    if (!found) throw DataError("merge references inactive cluster " + std::to_string(m.second));
    levels.push_back(Partition::canonical(owner));
  }
  std::reverse(levels.begin(), levels.end());
  return levels;
}

std::vector<Partition> replay_splits(const Partition& finest, std::span<const SplitRecord> splits) {
  std::vector<int> labels = finest.labels();
  int k = finest.k();
  std::vector<Partition> levels{finest};
  for (auto it = splits.rbegin(); it != splits.rend(); ++it) {
    if (it->level != k || it->child != k - 1 || it->parent < 0 || it->parent >= it->child) {
      throw DataError("split record for level " + std::to_string(it->level) + " does not match level " +
                      std::to_string(k));
    }
    for (auto& l : labels) {
      if (l == it->child) l = it->parent;
    }
    --k;
    levels.emplace_back(labels, k);
  }
  std::reverse(levels.begin(), levels.end());
  return levels;
}

std::string format_merge_log(const MergeTree& tree) {
  std::ostringstream out;
  out << "level,event,parent_or_pair,children_or_value\n";
  for (const auto& s : tree.splits) {
    out << s.level << ",split," << s.parent + 1 << ',' << s.parent + 1 << ';' << s.child + 1 << '\n';
  }
  for (const auto& m : tree.merges) {
    out << m.level << ',' << (m.forced ? "forced_merge" : "merge") << ',' << m.first + 1 << ';' << m.second + 1
        << ',' << csv::format(m.linkage) << '\n';
  }
  return out.str();
}

MergeTree parse_merge_log(std::string_view text) {
  const auto table = csv::parse(text, "merge log");
  if (table.header != std::vector<std::string>{"level", "event", "parent_or_pair", "children_or_value"}) {
    throw DataError("merge log: unexpected header");
  }
  MergeTree tree;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "merge log:" + std::to_string(table.line_numbers[r]);
    const int level = static_cast<int>(csv::to_integer(row[0], where));
    if (row[1] == "split") {
      const auto kids = csv::split(row[3], ';');
      if (kids.size() != 2) throw DataError(where + ": split needs two children");
      const int parent = static_cast<int>(csv::to_integer(row[2], where)) - 1;
      if (static_cast<int>(csv::to_integer(kids[0], where)) - 1 != parent) {
        throw DataError(where + ": first child must keep the parent id");
      }
      tree.splits.push_back({level, parent, static_cast<int>(csv::to_integer(kids[1], where)) - 1, 0.0});
    } else if (row[1] == "merge" || row[1] == "forced_merge") {
      const auto pair = csv::split(row[2], ';');
      if (pair.size() != 2) throw DataError(where + ": merge needs a pair");
      tree.merges.push_back({level, static_cast<int>(csv::to_integer(pair[0], where)) - 1,
                             static_cast<int>(csv::to_integer(pair[1], where)) - 1, csv::to_double(row[3], where),
                             row[1] == "forced_merge"});
    } else {
      throw DataError(where + ": unknown event '" + row[1] + "'");
    }
  }
  return tree;
}

}  // namespace regionalize
