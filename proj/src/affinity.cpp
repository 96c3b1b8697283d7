#include "regionalize/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "regionalize/error.hpp"

namespace regionalize {

namespace {

constexpr std::size_t kSigmaSamplePairs = 1000;

double median_of(std::vector<double> v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Row-major index p of the strict upper triangle -> (i, j).
std::pair<Eigen::Index, Eigen::Index> pair_at(std::size_t p, Eigen::Index n) {
  Eigen::Index i = 0;
  auto remaining = p;
  while (remaining >= static_cast<std::size_t>(n - 1 - i)) {
    remaining -= static_cast<std::size_t>(n - 1 - i);
    ++i;
  }
  return {i, i + 1 + static_cast<Eigen::Index>(remaining)};
}

void check_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + " must be square");
}

}  // namespace

double median_sigma(const Eigen::MatrixXd& x) {
  const auto n = x.rows();
  if (n < 2) return 1.0;
  const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<double> dists;
  if (total <= kSigmaSamplePairs) {
    dists.reserve(total);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) dists.push_back((x.row(i) - x.row(j)).norm());
    }
  } else {
    dists.reserve(kSigmaSamplePairs);
    for (std::size_t t = 0; t < kSigmaSamplePairs; ++t) {
      const auto [i, j] = pair_at(t * total / kSigmaSamplePairs, n);
      dists.push_back((x.row(i) - x.row(j)).norm());
    }
  }
  const double med = median_of(dists);
  if (med > 0.0) return med;
  std::erase_if(dists, [](double v) { return !(v > 0.0); });
  return dists.empty() ? 1.0 : median_of(std::move(dists));
}

AffinityMatrix rbf_similarity(const FeatureMatrix& f, double sigma) {
  if (f.stage == FeatureStage::raw) {
    throw InvalidArgument("RBF similarity expects standardized or reduced features");
  }
  return rbf_similarity(f.values, sigma);
}

AffinityMatrix rbf_similarity(const Eigen::MatrixXd& x, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be a positive finite number");
  const auto n = x.rows();
  // Row differences rather than the Gram expansion so identical rows give exactly 1.
  const Eigen::MatrixXd xt = x.transpose();
  const double scale = -1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    s(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = std::exp((xt.col(i) - xt.col(j)).squaredNorm() * scale);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return {std::move(s), AffinityKind::feature};
}

AffinityMatrix combine_hadamard(const AffinityMatrix& s, const ConstraintKernel& sc) {
  return combine_hadamard(s, sc.matrix);
}

AffinityMatrix combine_hadamard(const AffinityMatrix& s, const Eigen::MatrixXd& sc) {
  check_square(s.values, "affinity");
  if (s.values.rows() != sc.rows() || s.values.cols() != sc.cols()) {
    throw InvalidArgument("dimension mismatch: affinity is " + std::to_string(s.values.rows()) +
                          "x" + std::to_string(s.values.cols()) + ", constraint kernel is " +
                          std::to_string(sc.rows()) + "x" + std::to_string(sc.cols()));
  }
  return {s.values.cwiseProduct(sc), AffinityKind::combined};
}

AffinityMatrix combine_weighted(const AffinityMatrix& s, const Eigen::MatrixXd& c, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("weighted-sum delta must lie in [0, 1]");
  check_square(s.values, "affinity");
  if (s.values.rows() != c.rows() || s.values.cols() != c.cols()) {
    throw InvalidArgument("dimension mismatch between affinity and adjacency");
  }
  return {(1.0 - delta) * s.values + delta * c, AffinityKind::combined};
}

AffinityMatrix combine_weighted(const AffinityMatrix& s, const ConstraintGraph& g, double delta) {
  return combine_weighted(s, g.adjacency_matrix(), delta);
}

AffinityMatrix constraint_affinity(const ConstraintGraph& g) {
  return {g.adjacency_matrix(), AffinityKind::constraint};
}

LaplacianPair laplacian(const AffinityMatrix& s) {
  check_square(s.values, "affinity");
  LaplacianPair out;
  out.degrees = s.values.rowwise().sum();
  for (Eigen::Index i = 0; i < out.degrees.size(); ++i) {
    if (!(out.degrees(i) > 0.0)) {
      throw NumericalError("isolated unit under combined affinity (row " + std::to_string(i) + ")");
    }
  }
  out.laplacian = -s.values;
  out.laplacian.diagonal() += out.degrees;
  return out;
}

}  // namespace regionalize
