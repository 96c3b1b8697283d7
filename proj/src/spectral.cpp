#include "regionalize/spectral.hpp"

#include <cmath>
#include <string>

#include "regionalize/error.hpp"

namespace regionalize {

SpectralEmbedding generalized_spectrum(const LaplacianPair& lp) {
  const auto n = lp.degrees.size();
  if (lp.laplacian.rows() != n || lp.laplacian.cols() != n) {
    throw InvalidArgument("Laplacian and degree vector sizes disagree");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(lp.degrees(i) > 0.0)) {
      throw NumericalError("nonpositive degree at row " + std::to_string(i));
    }
  }

  const Eigen::VectorXd inv_sqrt = lp.degrees.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd normalized = inv_sqrt.asDiagonal() * lp.laplacian * inv_sqrt.asDiagonal();
  normalized = 0.5 * (normalized + normalized.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");

  SpectralEmbedding out;
  out.eigenvalues = solver.eigenvalues();
  out.vectors = inv_sqrt.asDiagonal() * solver.eigenvectors();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    auto col = out.vectors.col(j);
    Eigen::Index arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    if (col(arg) < 0.0) col = -col;
  }
  return out;
}

SpectralEmbedding leading(const SpectralEmbedding& full, int k) {
  if (k < 1 || k > full.dimension()) {
    throw InvalidArgument("requested " + std::to_string(k) + " eigenvectors from a problem of size " +
                          std::to_string(full.dimension()));
  }
  return {full.vectors.leftCols(k), full.eigenvalues.head(k)};
}

SpectralEmbedding generalized_eigs(const LaplacianPair& lp, int k) {
  if (k < 1 || k > lp.degrees.size()) {
    throw InvalidArgument("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(lp.degrees.size()) + "]");
  }
  return leading(generalized_spectrum(lp), k);
}

int count_zero_eigenvalues(const SpectralEmbedding& e, double tolerance) {
  return static_cast<int>((e.eigenvalues.array() <= tolerance).count());
}

}  // namespace regionalize
