#include "regionalize/kmeans.hpp"

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "regionalize/error.hpp"
#include "regionalize/random.hpp"

namespace regionalize {

namespace {

struct Run {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double inertia = std::numeric_limits<double>::infinity();
};

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& x, int k, Rng& rng) {
  const auto n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);

  auto first = static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(n)));
  centers.row(0) = x.row(first);
  chosen[static_cast<std::size_t>(first)] = 1;
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();

  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2(i) > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Remaining points coincide with chosen centers; pick an unused index.
      std::vector<Eigen::Index> unused;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) unused.push_back(i);
      }
      pick = unused[rng.below(unused.size())];
    }
    centers.row(c) = x.row(pick);
    chosen[static_cast<std::size_t>(pick)] = 1;
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

Run lloyd(const Eigen::MatrixXd& x, int k, Eigen::MatrixXd centers, int max_iterations) {
  const auto n = x.rows();
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<int> previous;
  for (int iter = 0; iter < max_iterations; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = arg;
    }

    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      double worst = -1.0;
      Eigen::Index arg = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        const int own = labels[static_cast<std::size_t>(i)];
        if (counts[static_cast<std::size_t>(own)] < 2) continue;
        const double d = (x.row(i) - centers.row(own)).squaredNorm();
        if (d > worst) {
          worst = d;
          arg = i;
        }
      }
      --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(arg)])];
      labels[static_cast<std::size_t>(arg)] = c;
      counts[static_cast<std::size_t>(c)] = 1;
    }

    centers.setZero();
    for (Eigen::Index i = 0; i < n; ++i) centers.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);

    if (labels == previous) break;
    previous = labels;
  }

  double inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    inertia += (x.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return {std::move(labels), std::move(centers), inertia};
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed, int max_iterations) {
  const auto n = points.rows();
  if (k < 1) throw InvalidArgument("k must be positive");
  if (n < k) {
    throw InvalidArgument("k-means needs at least k points (n = " + std::to_string(n) + ", k = " +
                          std::to_string(k) + ")");
  }
  if (restarts < 1) throw InvalidArgument("k-means restarts must be positive");
  if (max_iterations < 1) throw InvalidArgument("k-means max_iterations must be positive");

  Run best;
  int best_restart = 0;
  for (int t = 0; t < restarts; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    Run run = lloyd(points, k, seed_plus_plus(points, k, rng), max_iterations);
    if (run.inertia < best.inertia) {
      best = std::move(run);
      best_restart = t;
    }
  }

  // Relabel by first occurrence and permute centroids to match.
  std::unordered_map<int, int> remap;
  std::vector<int> labels;
  labels.reserve(best.labels.size());
  for (int l : best.labels) labels.push_back(remap.try_emplace(l, static_cast<int>(remap.size())).first->second);
  Eigen::MatrixXd centroids(k, points.cols());
  for (const auto& [from, to] : remap) centroids.row(to) = best.centroids.row(from);

  return {Partition(std::move(labels), k), std::move(centroids), best.inertia, best_restart};
}

}  // namespace regionalize
