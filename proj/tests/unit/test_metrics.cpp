#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "oracles/contiguity_bruteforce.hpp"
#include "oracles/exhaustive_bisection.hpp"
#include "oracles/pair_counting.hpp"
#include "regionalize/error.hpp"
#include "regionalize/kmeans.hpp"
#include "regionalize/metrics.hpp"
#include "regionalize/random.hpp"
#include "support/fixtures.hpp"

using namespace regionalize;

TEST_SUITE("metrics") {

TEST_CASE("ssw examples") {
  Rng rng(1);
  const Eigen::MatrixXd x = fixtures::gaussian_matrix(9, 3, rng);
  CHECK(ssw(x, Partition::singletons(9)) == 0.0);
  Eigen::MatrixXd two(2, 1);
  two << 0, 2;
  CHECK(ssw(two, Partition::single(2)) == 2.0);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const double biased = (x.rowwise() - mean).array().square().colwise().sum().sum() / 9.0;
  CHECK(ssw(x, Partition::single(9)) == doctest::Approx(9.0 * biased).epsilon(1e-12));
}

TEST_CASE("pct_ml examples") {
  const auto g = fixtures::path_graph(3);
  CHECK(pct_ml(g, Partition::single(3)) == 1.0);
  CHECK(pct_ml(g, Partition::singletons(3)) == 0.0);
  CHECK(pct_ml(g, Partition({0, 0, 1}, 2)) == 0.5);
  CHECK_THROWS_AS(pct_ml(ConstraintGraph(2, {}), Partition::single(2)), DataError);
}

TEST_CASE("contiguity examples") {
  const auto g = fixtures::path_graph(4);
  CHECK(contiguity_c(g, Partition::single(4)) == 1.0);
  // phi = 1 + 1, nu = 2 * 2 / 1, Omega = 6
  CHECK(contiguity_c(g, Partition({0, 0, 1, 1}, 2)) == doctest::Approx(1.0).epsilon(1e-15));
  // far regions contribute less: three regions on a path, l_13 = 2
  const auto p = Partition({0, 1, 2, 2}, 3);
  CHECK(contiguity_c(g, p) == doctest::Approx((1 + 1 + 2.0 / 2 + 2) / 6.0));
  CHECK(contiguity_c(g, p, 2.0) < contiguity_c(g, p, 1.0));
  CHECK_THROWS_AS(contiguity_c(ConstraintGraph(3, std::vector<Edge>{{0, 1}}), Partition::single(3)), DataError);
  CHECK_THROWS_AS(contiguity_c(g, p, 0.0), InvalidArgument);
}

TEST_CASE("contiguity agrees with brute force") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const auto g = fixtures::random_connected_graph(n, 0.15, rng);
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(n)));
    const auto labels = fixtures::random_labels(n, k, rng);
    const double gamma = t % 2 ? 1.0 : 0.5 + 2.0 * rng.uniform();
    const double lib = contiguity_c(g, Partition(labels, k), gamma);
    const double ref = oracle::contiguity_bruteforce(n, g.edges(), labels, k, gamma);
    CHECK(std::fabs(lib - ref) <= 1e-12);
  }
}

TEST_CASE("cbalance examples") {
  CHECK(cbalance(Partition({0, 0, 1, 1, 2, 2}, 3)) == doctest::Approx(1.0).epsilon(1e-15));
  std::vector<int> skew(10, 1);
  skew[0] = 0;
  CHECK(cbalance(Partition(skew, 2)) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(cbalance(Partition::single(7)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("adjusted rand examples") {
  const Partition p({0, 0, 1, 1}, 2);
  CHECK(adjusted_rand(p, Partition({1, 1, 0, 0}, 2)) == 1.0);
  CHECK(adjusted_rand(Partition::single(5), Partition::singletons(5)) == 0.0);
  const Partition q({0, 1, 0, 1}, 2);
  CHECK(adjusted_rand(p, q) == doctest::Approx(oracle::ari_pairs(p.labels(), q.labels())).epsilon(1e-14));
  CHECK(adjusted_rand(p, q) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(adjusted_rand(p, Partition::single(3)), InvalidArgument);
}

TEST_CASE("metric properties on random partitions") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(30));
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(n)));
    const auto g = fixtures::random_connected_graph(n, 0.1, rng);
    const Partition p(fixtures::random_labels(n, k, rng), k);
    const int k2 = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(n)));
    const Partition q(fixtures::random_labels(n, k2, rng), k2);

    // relabel p by a random permutation of region ids
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = k - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::size_t>(i + 1))]);
    std::vector<int> relabeled(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) relabeled[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(p[i])];
    const Partition pr(relabeled, k);

    CHECK(adjusted_rand(p, p) == 1.0);
    CHECK(adjusted_rand(p, pr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(adjusted_rand(p, q) == adjusted_rand(q, p));
    CHECK(adjusted_rand(p, q) == doctest::Approx(oracle::ari_pairs(p.labels(), q.labels())).epsilon(1e-10));
    CHECK(pct_ml(g, p) == pct_ml(g, pr));
    CHECK(pct_ml(g, p) >= 0.0);
    CHECK(pct_ml(g, p) <= 1.0);
    CHECK(pct_ml(g, Partition::single(n)) == 1.0);
    CHECK(contiguity_c(g, p) == doctest::Approx(contiguity_c(g, pr)).epsilon(1e-12));
    CHECK(contiguity_c(g, Partition::single(n)) == 1.0);

    const double cb = cbalance(p);
    CHECK(cb > 0.0);
    CHECK(cb <= 1.0 + 1e-12);
    const auto sizes = p.sizes();
    const bool equal = std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == sizes[0]; });
    if (equal) CHECK(cb == doctest::Approx(1.0).epsilon(1e-12));
    else CHECK(cb < 1.0 - 1e-12);
  }
}

TEST_CASE("region connectivity") {
  const auto g = fixtures::path_graph(3);
  CHECK(region_connectivity(g, Partition::single(3)) == std::vector<bool>{true});
  CHECK(region_connectivity(g, Partition::singletons(3)) == std::vector<bool>{true, true, true});
  CHECK(region_connectivity(g, Partition({0, 1, 0}, 2)) == std::vector<bool>{false, true});
}

TEST_CASE("splitting a region at its optimal bisection never raises SSW") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const Eigen::MatrixXd x = fixtures::gaussian_matrix(n, 2, rng);
    const auto best = oracle::best_bisection(fixtures::to_rows(x));
    const Partition split(best.labels, 2);
    CHECK(ssw(x, split) <= ssw(x, Partition::single(n)));
    CHECK(ssw(x, split) == doctest::Approx(best.sse).epsilon(1e-12));
  }
}

TEST_CASE("evaluate assembles the report") {
  SyntheticSpec spec;
  spec.rows = spec.cols = 4;
  spec.planted_regions = block_labels(4, 4, 1, 2);
  const auto data = generate_synthetic(spec);
  const auto r = evaluate(data.dataset, data.truth);
  CHECK(r.per_region.size() == 2);
  CHECK(r.pct_ml == doctest::Approx(20.0 / 24.0));
  CHECK(r.contiguity_c == doctest::Approx(1.0));
  CHECK(r.cbalance == doctest::Approx(1.0));
  CHECK(r.ssw == doctest::Approx(0.0).epsilon(1e-12));
}

}  // TEST_SUITE
