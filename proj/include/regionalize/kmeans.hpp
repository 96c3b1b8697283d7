#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "regionalize/partition.hpp"

namespace regionalize {

struct KMeansResult {
  Partition partition;      // labels by first occurrence
  Eigen::MatrixXd centroids;  // k x dim, row r = centroid of region r
  double inertia = 0.0;     // within-cluster squared error
  int restart = 0;          // index of the winning restart
};

/// Lloyd's algorithm on the rows of `points`, k-means++ seeded, best of
/// `restarts` runs by inertia (lower restart index wins ties).
///
/// Restart t draws from Rng(derive_seed(seed, t)). Points go to the nearest
/// centroid, lowest index on ties. An empty cluster takes the point farthest
/// from its own centroid among clusters with more than one member. Iteration
/// stops when assignments repeat or after `max_iterations`.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed,
                    int max_iterations = 300);

}  // namespace regionalize
