#include <doctest.h>

#include <cmath>

#include "pgst/error.hpp"
#include "pgst/walk.hpp"
#include "support.hpp"

using namespace pgst;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<WeightedGraph> structure_graphs() {
  std::vector<WeightedGraph> graphs;
  for (int d = 1; d <= 5; ++d) {
    for (int m : {0, 1, 2, 3}) graphs.push_back(testing::hypercube_graph(d, m));
  }
  for (unsigned seed = 1; seed <= 8; ++seed) graphs.push_back(testing::random_graph(3 + seed % 6, seed));
  return graphs;
}

}  // namespace

TEST_CASE("tail incidence") {
  const TailIncidence k2(build_hypercube(1));
  CHECK(max_abs(k2.dense() - Eigen::MatrixXcd::Identity(2, 2)) == 0.0);

  const TailIncidence q2(build_hypercube(2));
  for (auto c : q2.coefficients()) CHECK(std::abs(c - 1.0 / std::sqrt(2.0)) < 1e-15);

  const auto w41 = build_weighted_hypercube(4, 1);
  const TailIncidence n41(w41);
  for (ArcId e = 0; e < w41.arc_count(); ++e) {
    const double want = (e % 4 == 0) ? 1.0 / std::sqrt(7.0) : std::sqrt(2.0 / 7.0);
    CHECK(std::abs(n41.coefficients()[e] - want) < 1e-15);
  }
}

TEST_CASE("structure identities on all test graphs") {
  for (const auto& g : structure_graphs()) {
    const TransitionOperator u(g);
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const auto arcs = static_cast<Eigen::Index>(g.arc_count());
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(arcs, arcs);
    const Eigen::MatrixXcd nt = u.incidence().dense();
    const Eigen::MatrixXcd r = u.shift_operator().dense();
    const Eigen::MatrixXcd c = u.coin_operator().dense();
    const Eigen::MatrixXcd U = u.dense();
    CHECK(max_abs(nt * nt.adjoint() - Eigen::MatrixXcd::Identity(n, n)) < 1e-12);
    CHECK(max_abs(r * r - I) == 0.0);
    CHECK(max_abs(c * c - I) < 1e-12);
    CHECK(max_abs(U.adjoint() * U - I) < 1e-12);
    CHECK(max_abs(U - r * c) < 1e-15);
    const Eigen::MatrixXd h = hermitian_adjacency(g).normalized;
    CHECK(max_abs(nt * r * nt.adjoint() - h.cast<std::complex<double>>()) < 1e-12);
  }
}

TEST_CASE("matrix-free application matches the dense operator") {
  for (const auto& g : structure_graphs()) {
    const TransitionOperator u(g);
    const Eigen::MatrixXcd U = u.dense();
    ArcState x(g.arc_count());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = {std::sin(1.0 + i), std::cos(0.3 * i)};
    const ArcState y = u.apply(x);
    const Eigen::VectorXcd want = U * Eigen::Map<const Eigen::VectorXcd>(x.data(), static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y[i] - want(static_cast<Eigen::Index>(i))) < 1e-14);
  }
}

TEST_CASE("coin blocks") {
  const Coin k2 = coin(TailIncidence(build_hypercube(1)));
  CHECK(max_abs(k2.dense() - Eigen::MatrixXcd::Identity(2, 2)) == 0.0);

  const Eigen::MatrixXcd c3 = coin(TailIncidence(build_hypercube(3))).dense();
  for (Eigen::Index i = 0; i < 24; ++i) {
    for (Eigen::Index j = 0; j < 24; ++j) {
      const bool same_tail = i / 3 == j / 3;
      const double want = same_tail ? 2.0 / 3.0 - (i == j ? 1.0 : 0.0) : 0.0;
      CHECK(std::abs(c3(i, j) - want) < 1e-15);
    }
  }

  const Eigen::MatrixXcd c41 = coin(TailIncidence(build_weighted_hypercube(4, 1))).dense();
  Eigen::Vector4d v(1.0, std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0));
  v /= std::sqrt(7.0);
  const Eigen::Matrix4d block = 2.0 * v * v.transpose() - Eigen::Matrix4d::Identity();
  for (Eigen::Index u = 0; u < 16; ++u) CHECK(max_abs(c41.block(4 * u, 4 * u, 4, 4) - block.cast<std::complex<double>>()) < 1e-15);
}

TEST_CASE("shift") {
  const ArcReversal k2 = shift(build_hypercube(1));
  CHECK(k2.image(0) == 1);
  CHECK(k2.image(1) == 0);

  const auto q2 = build_hypercube(2);
  const ArcReversal r2 = shift(q2);
  CHECK(r2.image(*q2.find_arc(0b00, 0b01)) == *q2.find_arc(0b01, 0b00));

  const auto g = testing::random_graph(5, 17);
  const ArcReversal r = shift(g);
  for (ArcId e = 0; e < g.arc_count(); ++e) {
    CHECK(r.image(r.image(e)) == e);
    CHECK(g.tail(r.image(e)) == g.head(e));
  }
}

TEST_CASE("vertex states") {
  const TailIncidence k2(build_hypercube(1));
  const ArcState x = vertex_state(k2, 0);
  CHECK(x[0] == std::complex<double>(1.0));
  CHECK(x[1] == std::complex<double>(0.0));

  const TailIncidence q3(build_hypercube(3));
  const ArcState y = vertex_state(q3, 0);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(y[j] - 1.0 / std::sqrt(3.0)) < 1e-15);
  for (std::size_t j = 3; j < y.size(); ++j) CHECK(y[j] == std::complex<double>(0.0));

  const TailIncidence w41(build_weighted_hypercube(4, 1));
  const ArcState z = vertex_state(w41, 0);
  CHECK(std::abs(z[0] - 1.0 / std::sqrt(7.0)) < 1e-15);
  for (int j = 1; j < 4; ++j) CHECK(std::abs(z[j] - std::sqrt(2.0 / 7.0)) < 1e-15);
  CHECK(norm(z) == doctest::Approx(1.0));
  CHECK_THROWS_AS(vertex_state(w41, 16), Error);
}

TEST_CASE("evolution") {
  const auto k2 = build_hypercube(1);
  const TransitionOperator u2(k2);
  const ArcState x = vertex_state(u2.incidence(), 0);
  CHECK(evolve(u2, x, 0).state == x);
  const ArcState x1 = evolve(u2, x, 1).state;
  CHECK(x1[1] == std::complex<double>(1.0));
  CHECK(x1[0] == std::complex<double>(0.0));

  CHECK_THROWS_AS(evolve(u2, x, -1), Error);
  CHECK_THROWS_AS(evolve(u2, ArcState{2.0, 0.0}, 1), Error);
  CHECK_THROWS_AS(evolve(u2, ArcState{1.0}, 1), Error);

  const TransitionOperator q2(build_hypercube(2));
  for (ArcId e = 0; e < 8; ++e) {
    ArcState basis(8, 0.0);
    basis[e] = 1.0;
    CHECK(norm(evolve(q2, basis, 4).state) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("Q_4 Grover walk") {
  const auto q4 = build_hypercube(4);
  const TransitionOperator u(q4);
  const ArcState a = vertex_state(u.incidence(), 0);
  const ArcState b = vertex_state(u.incidence(), 15);
  // Independent brute-force simulation of U^t x, t = 0..12.
  const double oracle[] = {0, 0, 0, 0, 0.75, 0, -0.75, 0, 0.75, 0, 0, 0, 0};
  for (int t = 0; t <= 12; ++t) CHECK(std::abs(inner(evolve(u, a, t).state, b) - oracle[t]) < 1e-12);

  // Every theta is a multiple of pi / 6, so U^12 = I.
  for (ArcId e = 0; e < u.arc_count(); ++e) {
    ArcState basis(u.arc_count(), 0.0);
    basis[e] = 1.0;
    const ArcState back = evolve(u, basis, 12).state;
    for (std::size_t i = 0; i < back.size(); ++i) REQUIRE(std::abs(back[i] - basis[i]) < 1e-9);
  }
}

TEST_CASE("norm is preserved over long evolutions") {
  const TransitionOperator u(build_weighted_hypercube(5, 3));
  const Evolution e = evolve(u, vertex_state(u.incidence(), 0), 10000);
  CHECK(std::abs(norm(e.state) - 1.0) < 1e-10);
  CHECK(e.max_norm_drift < 1e-10);
  CHECK(e.renormalizations == 0);
}
