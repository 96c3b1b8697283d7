#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "regionalize/affinity.hpp"
#include "regionalize/constraint_graph.hpp"
#include "regionalize/dataset.hpp"
#include "regionalize/partition.hpp"
#include "regionalize/partitional.hpp"

namespace regionalize {

/// One HSSC bisection. The units of `parent` split into two regions: the part
/// holding the parent's lowest-index unit keeps id `parent`, the rest becomes
/// region `child`. `level` is the region count after the split.
struct SplitRecord {
  int level = 0;
  int parent = 0;
  int child = 0;
  double parent_ssw = 0.0;

  friend bool operator==(const SplitRecord&, const SplitRecord&) = default;
};

/// One agglomerative merge. Clusters are named by their lowest-index unit;
/// `second` is absorbed into `first` (first < second). `level` is the
/// cluster count after the merge. `linkage` is the combined similarity that
/// won (single/complete/UPGMA) or the SSW increase (Ward). `forced` marks a
/// merge between clusters with zero combined similarity.
struct MergeRecord {
  int level = 0;
  int first = 0;
  int second = 0;
  double linkage = 0.0;
  bool forced = false;

  friend bool operator==(const MergeRecord&, const MergeRecord&) = default;
};

/// Nested partitions, levels[k - 1] holding k regions.
struct MergeTree {
  std::vector<Partition> levels;
  std::vector<SplitRecord> splits;  // HSSC, in level order
  std::vector<MergeRecord> merges;  // agglomerative, in merge order

  [[nodiscard]] int max_level() const { return static_cast<int>(levels.size()); }
  /// Partition with k regions; throws InvalidArgument if absent.
  [[nodiscard]] const Partition& at(int k) const;
};

/// Top-down recursive bisection.
///
/// Builds the combined affinity once, then repeatedly picks the region with
/// the largest SSW (ties: larger region, then lower id; singletons are never
/// picked) and splits it with the two-way spectral pipeline on the principal
/// submatrix of the combined affinity. Stops at k_max regions or when only
/// singletons remain. cfg.k is ignored.
MergeTree hssc(const Dataset& d, const MethodConfig& cfg, int k_max);

/// Same, on a precomputed combined affinity.
MergeTree hssc(const Eigen::MatrixXd& features, const AffinityMatrix& total, const MethodConfig& cfg, int k_max);

enum class Linkage { single, complete, upgma, ward };

/// How the cluster-level constraint kernel follows merges.
enum class ConstraintUpdate {
  /// Rebuild the hop kernel on the contracted cluster graph after each merge
  /// and weight the feature linkage by it.
  recompute,
  /// Combine once at unit level: single, complete and UPGMA act on S o S_c
  /// directly. Ward pairs are eligible when any member pair has a positive
  /// kernel entry.
  fixed,
};

struct AgglomerativeConfig {
  Linkage linkage = Linkage::single;
  int delta = 1;
  KernelKind kernel = KernelKind::binarized;  // truncated or binarized
  std::optional<double> sigma;                // empty = median_sigma
  ConstraintUpdate update = ConstraintUpdate::recompute;

  void validate() const;
};

std::string to_string(Linkage l);
Linkage parse_linkage(const std::string& name);

/// Spatially constrained agglomerative clustering from the Hadamard-combined
/// similarity S o S_c(delta).
///
/// Single, complete and UPGMA merge the eligible pair with the highest
/// combined similarity and update S by their Lance-Williams rules (max, min,
/// size-weighted mean). Ward works on half squared Euclidean distances, so a
/// pair's value is the SSW increase of merging it, and merges the eligible
/// pair with the smallest increase. A pair is eligible when its constraint
/// kernel entry is positive. Ties go to the lexicographically lowest pair.
/// When no pair is eligible the pair with the best raw feature linkage is
/// merged and flagged as forced.
MergeTree agglomerative(const Dataset& d, const AgglomerativeConfig& cfg);

/// Same, with the feature similarity supplied (features are used by Ward).
MergeTree agglomerate(const Eigen::MatrixXd& features, const AffinityMatrix& similarity,
                      const ConstraintGraph& g, const AgglomerativeConfig& cfg);

/// Levels n..1 obtained by applying `merges` to singletons.
std::vector<Partition> replay_merges(int n, std::span<const MergeRecord> merges);

/// Levels 1..finest.k() obtained by undoing `splits` from the finest level.
std::vector<Partition> replay_splits(const Partition& finest, std::span<const SplitRecord> splits);

/// Line-oriented log `level,event,parent_or_pair,children_or_value`, one row
/// per split (`k,split,<parent>,<parent>;<child>`) or merge
/// (`k,merge|forced_merge,<first>;<second>,<linkage>`). Ids are 1-based.
std::string format_merge_log(const MergeTree& tree);

/// Inverse of format_merge_log; fills splits / merges only.
MergeTree parse_merge_log(std::string_view text);

}  // namespace regionalize
