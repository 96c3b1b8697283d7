#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regionalize/affinity.hpp"
#include "regionalize/dataset.hpp"
#include "regionalize/kmeans.hpp"
#include "regionalize/partition.hpp"
#include "regionalize/spectral.hpp"

namespace regionalize {

enum class Method {
  ssc,   // Hadamard product with the truncated exponential kernel
  bssc,  // Hadamard product with the binarized truncated exponential kernel
  scm,   // weighted sum (1 - delta) S + delta C
};

inline constexpr std::uint64_t kDefaultSeed = 42;

struct MethodConfig {
  Method method = Method::bssc;
  /// Integer hop radius for SSC/BSSC, mixture weight in [0, 1] for SCM.
  double delta = 1.0;
  int k = 2;
  /// RBF bandwidth; empty selects median_sigma().
  std::optional<double> sigma;
  int kmeans_restarts = 10;
  std::uint64_t seed = kDefaultSeed;
  /// Scale embedding rows to unit length before k-means. Off by default.
  bool normalize_rows = false;

  /// Throws InvalidArgument when delta, k or restarts are out of range.
  void validate() const;
  /// delta as a hop count (SSC/BSSC only).
  [[nodiscard]] int hops() const;
};

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// round(fraction * diameter): maps a diameter-normalized neighborhood size
/// in [0, 1] back to hops.
int hops_from_fraction(double fraction, int diameter);

/// Steps 1-3 of the pipeline: RBF similarity, constraint kernel, combination.
/// `sigma_used` receives the bandwidth actually applied.
AffinityMatrix combined_affinity(const Dataset& d, const MethodConfig& cfg, double* sigma_used = nullptr);

struct SpectralClustering {
  Partition partition;
  SpectralEmbedding embedding;   // k leading eigenpairs
  int zero_eigenvalues = 0;      // over the full spectrum, threshold 1e-8
  double inertia = 0.0;
};

/// Laplacian, k smallest generalized eigenvectors, then k-means on the rows.
SpectralClustering spectral_cluster(const AffinityMatrix& s, int k, int restarts, std::uint64_t seed,
                                    bool normalize_rows = false);

struct Delineation {
  Partition partition;
  SpectralEmbedding embedding;
  double sigma = 0.0;
  int zero_eigenvalues = 0;
  std::vector<std::string> warnings;
};

/// Partitional spatially constrained spectral clustering (SSC, BSSC or SCM)
/// on preprocessed features. Warns when the combined affinity has more zero
/// eigenvalues than requested regions.
Delineation delineate(const Dataset& d, const MethodConfig& cfg);

}  // namespace regionalize
