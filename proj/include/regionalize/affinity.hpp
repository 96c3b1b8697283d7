#pragma once

#include <Eigen/Dense>

#include "regionalize/constraint_graph.hpp"
#include "regionalize/dataset.hpp"

namespace regionalize {

enum class AffinityKind { feature, constraint, combined };

/// Symmetric nonnegative N x N similarity matrix. The diagonal is kept: RBF
/// self-similarity is 1 and every hop kernel has a unit m = 0 term.
struct AffinityMatrix {
  Eigen::MatrixXd values;
  AffinityKind kind = AffinityKind::feature;

  [[nodiscard]] int size() const { return static_cast<int>(values.rows()); }
};

/// Degrees D and Laplacian L = diag(D) - S of an affinity S.
struct LaplacianPair {
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd degrees;
};

/// Median pairwise Euclidean distance between feature rows. Uses every pair
/// when there are at most 1000, otherwise 1000 pairs at evenly spaced
/// positions of the row-major upper-triangle enumeration. Falls back to the
/// median of the positive sampled distances, then to 1.
double median_sigma(const Eigen::MatrixXd& features);

/// S_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)).
/// Requires standardized or reduced features and sigma > 0.
AffinityMatrix rbf_similarity(const FeatureMatrix& f, double sigma);

/// Unchecked-stage variant for callers that hold a bare matrix.
AffinityMatrix rbf_similarity(const Eigen::MatrixXd& features, double sigma);

/// Entrywise S o S_c.
AffinityMatrix combine_hadamard(const AffinityMatrix& s, const ConstraintKernel& sc);
AffinityMatrix combine_hadamard(const AffinityMatrix& s, const Eigen::MatrixXd& sc);

/// (1 - delta) S + delta C with the raw 0/1 adjacency C; delta in [0, 1].
AffinityMatrix combine_weighted(const AffinityMatrix& s, const Eigen::MatrixXd& adjacency, double delta);
AffinityMatrix combine_weighted(const AffinityMatrix& s, const ConstraintGraph& g, double delta);

/// The 0/1 adjacency of `g` as an affinity (spectral clustering on the
/// constraint graph alone).
AffinityMatrix constraint_affinity(const ConstraintGraph& g);

/// D_ii = sum_j S_ij including the diagonal. Throws NumericalError when a
/// degree is zero (isolated unit under the combined affinity).
LaplacianPair laplacian(const AffinityMatrix& s);

}  // namespace regionalize
