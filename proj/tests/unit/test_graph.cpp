#include <cmath>

#include "doctest.h"

#include "regionalize/constraint_graph.hpp"
#include "regionalize/error.hpp"
#include "regionalize/random.hpp"
#include "support/fixtures.hpp"

using namespace regionalize;

namespace {

// Entrywise sum of C^0 .. C^delta by dense multiplication.
Eigen::MatrixXd power_reach(const ConstraintGraph& g, int delta) {
  const Eigen::MatrixXd c = g.adjacency_matrix();
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(g.size(), g.size());
  Eigen::MatrixXd acc = term;
  for (int m = 1; m <= delta; ++m) {
    term = term * c;
    acc += term;
  }
  return acc;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("truncated kernel small cases") {
  Rng rng(1);
  const auto g = fixtures::random_connected_graph(12, 0.1, rng);
  CHECK(truncated_exponential_kernel(g, 0).matrix == Eigen::MatrixXd::Identity(12, 12));

  const auto path = fixtures::path_graph(3);
  const auto k1 = truncated_exponential_kernel(path, 1).matrix;
  CHECK(k1(0, 1) == 1.0);
  CHECK(k1(0, 2) == 0.0);
  CHECK(k1.diagonal() == Eigen::VectorXd::Ones(3));

  const auto k2 = truncated_exponential_kernel(path, 2).matrix;
  CHECK(k2(0, 2) == doctest::Approx(0.5));  // one length-2 path / 2!
  CHECK(k2(1, 1) == doctest::Approx(2.0));  // 1 + two closed walks / 2!
}

TEST_CASE("figure one neighborhoods") {
  const auto g = fixtures::figure_one_graph();
  const auto b1 = binarized_kernel(g, 1).matrix;
  for (int v = 0; v < 9; ++v) CHECK(b1(0, v) == (v <= 4 ? 1.0 : 0.0));
  const auto b2 = binarized_kernel(g, 2).matrix;
  CHECK(b2.row(0).sum() == 9.0);
  const auto t3 = truncated_exponential_kernel(g, 3).matrix;
  CHECK((t3.array() > 0.0).all());
}

TEST_CASE("binarized kernel collapses at the diameter") {
  Rng rng(2);
  for (int t = 0; t < 5; ++t) {
    const auto g = fixtures::random_connected_graph(20, 0.05, rng);
    const auto b = binarized_kernel(g, diameter(g)).matrix;
    CHECK((b.array() == 1.0).all());
    const auto below = binarized_kernel(g, diameter(g) - 1).matrix;
    CHECK((below.array() == 0.0).any());
  }
}

TEST_CASE("lattice corner within two hops") {
  const auto g = fixtures::lattice(3, 3);
  const auto b = binarized_kernel(g, 2).matrix;
  const Eigen::MatrixXd reach = power_reach(g, 2);
  CHECK(b.row(0).sum() == 6.0);
  for (int v = 0; v < 9; ++v) CHECK(b(0, v) == (reach(0, v) > 0 ? 1.0 : 0.0));
}

TEST_CASE("kernel properties on random graphs") {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    const int n = 2 + static_cast<int>(rng.below(29));
    const auto g = fixtures::random_connected_graph(n, 0.08, rng);
    Eigen::MatrixXd prev;
    for (int delta = 0; delta <= 6; ++delta) {
      const auto b = binarized_kernel(g, delta).matrix;
      const auto tr = truncated_exponential_kernel(g, delta).matrix;
      CHECK(b == b.transpose());
      CHECK(tr == tr.transpose());
      CHECK(b.diagonal() == Eigen::VectorXd::Ones(n));
      CHECK((tr.array() >= 0.0).all());
      CHECK(((b.array() == 1.0) == (tr.array() > 0.0)).all());
      const Eigen::MatrixXd reach = power_reach(g, delta);
      CHECK((b.array() == (reach.array() > 0.0).cast<double>()).all());
      if (delta > 0) CHECK((prev.array() <= b.array()).all());
      prev = b;
    }
  }
}

TEST_CASE("exponential kernel") {
  const auto two = fixtures::path_graph(2);
  const auto e = exponential_kernel(two, 1e-12).matrix;
  CHECK(std::fabs(e(0, 0) - std::cosh(1.0)) < 1e-11);
  CHECK(std::fabs(e(0, 1) - std::sinh(1.0)) < 1e-11);

  const ConstraintGraph empty(3, {});
  CHECK(exponential_kernel(empty, 1e-12).matrix == Eigen::MatrixXd::Identity(3, 3));
  const ConstraintGraph lone(1, {});
  CHECK(exponential_kernel(lone, 1e-12).matrix(0, 0) == 1.0);

  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto g = fixtures::random_connected_graph(5 + static_cast<int>(rng.below(46)), 0.05, rng);
    const auto m = exponential_kernel(g, 1e-10).matrix;
    CHECK(m == m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(fixtures::path_graph(5)) == 4);
  const std::vector<Edge> k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(diameter(ConstraintGraph(4, k4)) == 1);
  CHECK(diameter(fixtures::lattice(10, 10)) == 18);
  const ConstraintGraph split(4, std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK_THROWS_WITH_AS(diameter(split), doctest::Contains("2"), DataError);
}

TEST_CASE("components") {
  const auto g = fixtures::path_graph(3);
  const std::vector<int> all{0, 1, 2};
  CHECK(components(g, all).size() == 1);
  const std::vector<int> ends{0, 2};
  const auto parts = components(g, ends);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == std::vector<int>{0});
  CHECK(parts[1] == std::vector<int>{2});

  const auto lat = fixtures::lattice(10, 10);
  std::vector<int> left;
  for (int r = 0; r < 10; ++r) {
    for (int c = 0; c < 5; ++c) left.push_back(r * 10 + c);
  }
  CHECK(components(lat, left).size() == 1);
}

TEST_CASE("graph construction checks") {
  CHECK_THROWS_AS(ConstraintGraph(3, std::vector<Edge>{{0, 3}}), DataError);
  CHECK_THROWS_AS(ConstraintGraph(3, std::vector<Edge>{{1, 1}}), DataError);
  const ConstraintGraph g(3, std::vector<Edge>{{2, 0}, {0, 2}, {1, 0}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
  const auto c = g.adjacency_matrix();
  CHECK(c == c.transpose());
  CHECK(c.diagonal().isZero());
}

}  // TEST_SUITE
