#include "regionalize/partitional.hpp"

#include <cmath>

#include "regionalize/error.hpp"

namespace regionalize {

void MethodConfig::validate() const {
  if (!std::isfinite(delta)) throw InvalidArgument("delta must be finite");
  if (method == Method::scm) {
    if (delta < 0.0 || delta > 1.0) throw InvalidArgument("SCM delta must lie in [0, 1]");
  } else {
    if (delta < 0.0 || delta != std::floor(delta)) {
      throw InvalidArgument(to_string(method) + " delta must be a nonnegative integer hop count");
    }
  }
  if (k < 1) throw InvalidArgument("k must be positive");
  if (kmeans_restarts < 1) throw InvalidArgument("kmeans_restarts must be positive");
  if (sigma && !(*sigma > 0.0)) throw InvalidArgument("sigma must be positive");
}

int MethodConfig::hops() const {
  if (method == Method::scm) throw InvalidArgument("SCM delta is a weight, not a hop count");
  return static_cast<int>(delta);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::ssc: return "ssc";
    case Method::bssc: return "bssc";
    case Method::scm: return "scm";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "ssc") return Method::ssc;
  if (name == "bssc") return Method::bssc;
  if (name == "scm") return Method::scm;
  throw InvalidArgument("unknown method '" + name + "' (expected ssc, bssc or scm)");
}

int hops_from_fraction(double fraction, int diameter) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("normalized delta must lie in [0, 1]");
  return static_cast<int>(std::lround(fraction * diameter));
}

AffinityMatrix combined_affinity(const Dataset& d, const MethodConfig& cfg, double* sigma_used) {
  cfg.validate();
  const double sigma = cfg.sigma ? *cfg.sigma : median_sigma(d.features.values);
  if (sigma_used) *sigma_used = sigma;
  const AffinityMatrix s = rbf_similarity(d.features, sigma);
  switch (cfg.method) {
    case Method::ssc:
      return combine_hadamard(s, truncated_exponential_kernel(d.graph, cfg.hops()));
    case Method::bssc:
      return combine_hadamard(s, binarized_kernel(d.graph, cfg.hops()));
    case Method::scm:
      return combine_weighted(s, d.graph, cfg.delta);
  }
  throw InvalidArgument("unknown method");
}

SpectralClustering spectral_cluster(const AffinityMatrix& s, int k, int restarts, std::uint64_t seed,
                                    bool normalize_rows) {
  if (k < 1 || k > s.size()) {
    throw InvalidArgument("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(s.size()) + "]");
  }
  const SpectralEmbedding full = generalized_spectrum(laplacian(s));
  SpectralClustering out;
  out.zero_eigenvalues = count_zero_eigenvalues(full);
  out.embedding = leading(full, k);

  Eigen::MatrixXd points = out.embedding.vectors;
  if (normalize_rows) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const double norm = points.row(i).norm();
      if (norm > 0.0) points.row(i) /= norm;
    }
  }
  auto km = kmeans(points, k, restarts, seed);
  out.partition = std::move(km.partition);
  out.inertia = km.inertia;
  return out;
}

Delineation delineate(const Dataset& d, const MethodConfig& cfg) {
  d.validate();
  cfg.validate();
  if (cfg.k > d.size()) {
    throw InvalidArgument("k = " + std::to_string(cfg.k) + " exceeds the number of units (" +
                          std::to_string(d.size()) + ")");
  }
  Delineation out;
  const AffinityMatrix total = combined_affinity(d, cfg, &out.sigma);
  auto sc = spectral_cluster(total, cfg.k, cfg.kmeans_restarts, cfg.seed, cfg.normalize_rows);
  out.partition = std::move(sc.partition);
  out.embedding = std::move(sc.embedding);
  out.zero_eigenvalues = sc.zero_eigenvalues;
  if (out.zero_eigenvalues > cfg.k) {
    out.warnings.push_back("combined affinity has " + std::to_string(out.zero_eigenvalues) +
                           " disconnected components but only " + std::to_string(cfg.k) +
                           " regions were requested; some regions will not be contiguous");
  }
  return out;
}

}  // namespace regionalize
