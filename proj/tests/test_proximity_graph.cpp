#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <set>

#include "signet/errors.hpp"
#include "signet/proximity_graph.hpp"
#include "support.hpp"

using namespace signet;
using signet::testing::random_permutation;
using signet::testing::random_points;

namespace {

PointSet planar(std::initializer_list<std::pair<double, double>> pts) {
  PointSet ps;
  ps.coords.resize(static_cast<long>(pts.size()), 2);
  long i = 0;
  for (const auto& [x, y] : pts) {
    ps.coords(i, 0) = x;
    ps.coords(i, 1) = y;
    ++i;
  }
  return ps;
}

}  // namespace

TEST_CASE("pairwise distances: zero diagonal, symmetry, 3-4-5") {
  const PointSet ps = planar({{0, 0}, {3, 4}, {3, 4}});
  const Matrix d = pairwise_distance(ps);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(1, 2) == 0.0);  // identical points
  CHECK(d(0, 1) == doctest::Approx(5.0));
  CHECK((d - d.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("haversine distance of one degree of longitude at the equator") {
  PointSet ps = planar({{0, 0}, {1, 0}});
  ps.metric = Metric::haversine_km;
  const Matrix d = pairwise_distance(ps);
  CHECK(d(0, 1) == doctest::Approx(111.1949).epsilon(1e-5));
}

TEST_CASE("haversine rejects out-of-range coordinates") {
  PointSet ps = planar({{0, 0}, {181.0, 0}});
  ps.metric = Metric::haversine_km;
  CHECK_THROWS_AS(pairwise_distance(ps), DomainError);
  PointSet ps2 = planar({{0, 91.0}, {0, 0}});
  ps2.metric = Metric::haversine_km;
  CHECK_THROWS_AS(pairwise_distance(ps2), DomainError);
}

TEST_CASE("proximity graph thresholds inclusively") {
  const PointSet ps = planar({{0, 0}, {0, 0.1}, {0, 0.25}});
  const ProximityGraph g = build_proximity_graph(ps, 0.15);
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {1, 2}};
  CHECK(g.edges == expected);

  // Boundary: a pair at distance exactly rho is an edge.
  const ProximityGraph tie = build_proximity_graph(planar({{0, 0}, {1, 0}}), 1.0);
  CHECK(tie.edges.size() == 1);
}

TEST_CASE("zero radius yields no edges, large radius the complete graph") {
  Rng rng(3);
  PointSet ps;
  ps.coords = random_points(rng, 12);
  CHECK(build_proximity_graph(ps, 0.0).edges.empty());
  CHECK(build_proximity_graph(ps, 2.0).edges.size() == 12 * 11 / 2);
  CHECK_THROWS_AS(build_proximity_graph(ps, -0.1), DomainError);
}

TEST_CASE("coincident distinct points are connected at any radius") {
  const PointSet ps = planar({{0.5, 0.5}, {0.5, 0.5}});
  const ProximityGraph g = build_proximity_graph(ps, 0.0);
  CHECK(g.edges.size() == 1);
}

TEST_CASE("edge monotonicity in the radius") {
  Rng rng(5);
  PointSet ps;
  ps.coords = random_points(rng, 25);
  ProximityGraph small = build_proximity_graph(ps, 0.2);
  ProximityGraph large = build_proximity_graph(ps, 0.35);
  std::set<std::pair<int, int>> large_set(large.edges.begin(), large.edges.end());
  for (const auto& e : small.edges) CHECK(large_set.count(e) == 1);
}

TEST_CASE("shift operator of isolated nodes is the identity") {
  PointSet ps = planar({{0, 0}, {10, 10}});
  const ShiftOperator s = gcn_shift(build_proximity_graph(ps, 1.0));
  CHECK((s - Matrix::Identity(2, 2)).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("shift operator of a single edge averages both nodes") {
  PointSet ps = planar({{0, 0}, {0, 1}});
  const ShiftOperator s = gcn_shift(build_proximity_graph(ps, 1.0));
  Matrix expected(2, 2);
  expected << 0.5, 0.5, 0.5, 0.5;
  CHECK((s - expected).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("shift operator of a single node is [[1]]") {
  const ShiftOperator s = gcn_shift(build_proximity_graph(planar({{0, 0}}), 1.0));
  CHECK(s.rows() == 1);
  CHECK(s(0, 0) == 1.0);
}

TEST_CASE("shift sparsity pattern matches edges plus diagonal") {
  Rng rng(9);
  PointSet ps;
  ps.coords = random_points(rng, 20);
  const ProximityGraph g = build_proximity_graph(ps, 0.3);
  const ShiftOperator s = gcn_shift(g);
  std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
  for (long i = 0; i < 20; ++i)
    for (long j = 0; j < 20; ++j) {
      const bool expected = i == j || edges.count({std::min(i, j), std::max(i, j)}) > 0;
      CHECK((s(i, j) != 0.0) == expected);
    }
}

TEST_CASE("shift eigenvalues lie in [-1, 1]") {
  Rng rng(13);
  for (int rep = 0; rep < 6; ++rep) {
    PointSet ps;
    ps.coords = random_points(rng, 10 + static_cast<long>(rng.below(41)));
    const ShiftOperator s = gcn_shift(build_proximity_graph(ps, 0.25));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
    CHECK(eig.eigenvalues().minCoeff() >= -1.0 - 1e-9);
    CHECK(eig.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
  }
}

TEST_CASE("relabeling points conjugates the shift operator") {
  Rng rng(17);
  PointSet ps;
  ps.coords = random_points(rng, 15);
  const ShiftOperator s = gcn_shift(build_proximity_graph(ps, 0.3));

  const std::vector<int> perm = random_permutation(rng, 15);
  PointSet shuffled;
  shuffled.coords.resize(15, 2);
  for (long i = 0; i < 15; ++i) shuffled.coords.row(perm[i]) = ps.coords.row(i);
  const ShiftOperator sp = gcn_shift(build_proximity_graph(shuffled, 0.3));

  // S'[perm(i)][perm(j)] must equal S[i][j] bitwise: entries are computed
  // from the same integer degrees in both labelings.
  for (long i = 0; i < 15; ++i)
    for (long j = 0; j < 15; ++j) CHECK(sp(perm[i], perm[j]) == s(i, j));
}

TEST_CASE("apply_shift is the plain matrix product") {
  Rng rng(19);
  PointSet ps;
  ps.coords = random_points(rng, 8);
  const ShiftOperator s = gcn_shift(build_proximity_graph(ps, 0.4));

  Matrix x(8, 3);
  for (long i = 0; i < x.size(); ++i) x(i / 3, i % 3) = rng.uniform(-1, 1);
  CHECK(((apply_shift(s, x)) - s * x).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((apply_shift(Matrix::Identity(8, 8), x) - x).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(apply_shift(s, Matrix::Zero(8, 2)).isZero(0.0));

  // Row sums of any single-edge component shift are 1, so constants are fixed.
  const ShiftOperator pair_s = gcn_shift(build_proximity_graph(planar({{0, 0}, {0, 1}}), 2.0));
  const Matrix ones = Matrix::Ones(2, 1);
  CHECK((apply_shift(pair_s, ones) - ones).lpNorm<Eigen::Infinity>() < 1e-15);

  CHECK_THROWS_AS(apply_shift(s, Matrix::Zero(5, 2)), ShapeError);
}
