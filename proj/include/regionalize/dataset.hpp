#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "regionalize/constraint_graph.hpp"
#include "regionalize/partition.hpp"

namespace regionalize {

enum class FeatureStage { raw, standardized, reduced };

/// N x d feature table. Rows follow the owning dataset's unit order.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  FeatureStage stage = FeatureStage::raw;
  std::vector<std::string> names;  // one per column

  [[nodiscard]] int rows() const { return static_cast<int>(values.rows()); }
  [[nodiscard]] int cols() const { return static_cast<int>(values.cols()); }
};

/// Spatial units with their features, must-link graph and optional lattice
/// coordinates (used only for rendering).
struct Dataset {
  std::vector<std::string> unit_ids;
  FeatureMatrix features;
  ConstraintGraph graph;
  std::optional<Eigen::MatrixX2d> coordinates;

  [[nodiscard]] int size() const { return static_cast<int>(unit_ids.size()); }

  /// Checks N >= 2, unique ids, and matching row / vertex counts.
  void validate() const;
  /// Position of `unit_id`, or -1.
  [[nodiscard]] int index_of(const std::string& unit_id) const;
};

/// Reads a features CSV (`unit_id,<f1>,...`) and an adjacency CSV (`src,dst`).
/// Edges are deduplicated; unknown ids, duplicate ids, self-loops and
/// non-numeric cells raise DataError naming the offending row.
Dataset load_dataset(const std::filesystem::path& features_path,
                     const std::filesystem::path& adjacency_path);

/// Reads `features.csv`, `adjacency.csv` and, if present, `coords.csv`
/// (`unit_id,x,y`) from a directory.
Dataset load_dataset_dir(const std::filesystem::path& dir);

/// Writes the three files read by load_dataset_dir.
void save_dataset(const Dataset& d, const std::filesystem::path& dir);

/// Column indices whose values are all identical.
std::vector<int> constant_columns(const Eigen::MatrixXd& values);

/// Centers each column and scales it to unit sample variance (n - 1
/// denominator). Throws DataError on a constant column.
FeatureMatrix standardize(const FeatureMatrix& f);

/// Principal components of standardized data.
struct PcaResult {
  Eigen::MatrixXd scores;          // N x retained, decreasing variance
  Eigen::MatrixXd loadings;        // d x retained, unit columns
  std::vector<double> explained;   // variance ratio of every component, descending
  int retained = 0;
};

/// Eigendecomposition of the sample correlation matrix. Keeps the shortest
/// prefix whose cumulative explained-variance ratio reaches `variance_target`.
/// Equal eigenvalues keep their original index order; each loading vector is
/// signed so its largest-magnitude entry is positive.
PcaResult principal_components(const Eigen::MatrixXd& standardized, double variance_target);

/// Drops constant columns, standardizes, and projects onto the principal
/// components reaching `variance_target` of the total variance.
Dataset preprocess(const Dataset& d, double variance_target = 0.85);

/// Parameters of a planted-region lattice.
struct SyntheticSpec {
  int rows = 10;
  int cols = 10;
  /// Row-major region label per lattice cell (rows * cols entries).
  std::vector<int> planted_regions;
  int feature_dim = 3;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
  /// Euclidean distance between the means of regions r and r + 1.
  double separation = 1.0;

  void validate() const;
};

/// Row-major labels splitting a rows x cols lattice into a grid of
/// block_rows x block_cols rectangles, numbered row-major.
std::vector<int> block_labels(int rows, int cols, int block_rows, int block_cols);

/// Parses a block layout: "BRxBC" (e.g. "1x2" for left/right halves) or a
/// comma-separated row-major label list of length rows * cols.
std::vector<int> parse_blocks(const std::string& spec, int rows, int cols);

/// Reads a `key = value` file whose keys are the SyntheticSpec field names
/// (planted_regions takes a parse_blocks string). '#' starts a comment.
SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);

struct SyntheticData {
  Dataset dataset;
  Partition truth;
};

/// 4-neighbor lattice with unit ids `r<row>c<col>`. Region r has mean
/// r * separation / sqrt(d) in every coordinate; each unit adds independent
/// N(0, noise_sigma^2) noise drawn from Rng(seed) in row-major unit order,
/// coordinate by coordinate. Coordinates are (col, row). Throws DataError when
/// a planted region is not connected on the lattice.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace regionalize
