#pragma once

#include <Eigen/Dense>

#include "regionalize/affinity.hpp"

namespace regionalize {

/// Generalized eigenpairs of L r = lambda D r, ascending by eigenvalue.
///
/// Columns satisfy r_i' D r_j = delta_ij. Each column is signed so that its
/// largest-magnitude entry (first such index on ties) is positive.
struct SpectralEmbedding {
  Eigen::MatrixXd vectors;      // n x k
  Eigen::VectorXd eigenvalues;  // k, ascending

  [[nodiscard]] int dimension() const { return static_cast<int>(vectors.cols()); }
};

/// Full generalized spectrum via the symmetric reduction
/// D^{-1/2} L D^{-1/2} u = lambda u, r = D^{-1/2} u.
SpectralEmbedding generalized_spectrum(const LaplacianPair& lp);

/// The k smallest generalized eigenpairs. "Top k" eigenvectors in the
/// spectral clustering sense are those of the k smallest eigenvalues; the
/// trivial near-constant vector is kept as the first column.
SpectralEmbedding generalized_eigs(const LaplacianPair& lp, int k);

/// Leading k columns of an already computed spectrum.
SpectralEmbedding leading(const SpectralEmbedding& full, int k);

/// Number of eigenvalues at or below `tolerance`.
int count_zero_eigenvalues(const SpectralEmbedding& e, double tolerance = 1e-8);

}  // namespace regionalize
