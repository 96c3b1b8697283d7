#pragma once

#include <vector>

#include <Eigen/Dense>

#include "regionalize/constraint_graph.hpp"
#include "regionalize/dataset.hpp"
#include "regionalize/partition.hpp"

namespace regionalize {

/// Within-region sum of squared Euclidean distances to the region centroid.
double ssw(const Eigen::MatrixXd& features, const Partition& p);

/// SSW of each region separately.
std::vector<double> region_ssw(const Eigen::MatrixXd& features, const Partition& p);

/// Fraction of must-link edges whose endpoints share a region. Throws
/// DataError on a graph without edges.
double pct_ml(const ConstraintGraph& g, const Partition& p);

/// k x k matrix of minimum hop distances between any unit of region i and any
/// unit of region j (0 on the diagonal, -1 if unreachable).
Eigen::MatrixXi region_hop_distances(const ConstraintGraph& g, const Partition& p);

/// l_ij: sum of edge weights along the unique path between regions i and j in
/// the minimum spanning tree of the complete region graph weighted by
/// region_hop_distances. Prim's algorithm from region 0, lower index on ties.
/// This is the single point that fixes how region path lengths are measured.
Eigen::MatrixXd region_mst_path_lengths(const ConstraintGraph& g, const Partition& p);

/// Relative contiguity c = (phi + nu) / Omega with
///   phi   = sum_i N_i (N_i - 1) / 2
///   nu    = 1/2 sum_{i != j} N_i N_j / l_ij^gamma
///   Omega = N (N - 1) / 2.
/// Requires a connected constraint graph (DataError otherwise).
double contiguity_c(const ConstraintGraph& g, const Partition& p, double gamma = 1.0);

/// (k / N) * (prod n_i)^(1/k), evaluated in log space.
double cbalance(const Partition& p);

/// Hubert-Arabie adjusted Rand index. Two identical trivial partitions (both
/// one cluster, or both all singletons) score 1.
double adjusted_rand(const Partition& p, const Partition& q);

/// Whether each region induces a connected subgraph.
std::vector<bool> region_connectivity(const ConstraintGraph& g, const Partition& p);

struct RegionReport {
  int size = 0;
  double ssw = 0.0;
  bool connected = false;
};

struct MetricReport {
  double ssw = 0.0;
  double pct_ml = 0.0;
  double contiguity_c = 0.0;
  double cbalance = 0.0;
  std::vector<RegionReport> per_region;
};

/// Every metric for `p`, with SSW measured in `d`'s (preprocessed) feature space.
MetricReport evaluate(const Dataset& d, const Partition& p, double gamma = 1.0);

}  // namespace regionalize
