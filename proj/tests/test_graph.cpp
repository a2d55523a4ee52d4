#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "pgst/error.hpp"
#include "pgst/graph.hpp"
#include "pgst/number_theory.hpp"
#include "support.hpp"

using namespace pgst;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kParse;
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("hypercube builders") {
  const auto k2 = build_hypercube(1);
  CHECK(k2.vertex_count() == 2);
  CHECK(k2.edge_count() == 1);

  const auto c4 = build_hypercube(2);
  for (Vertex v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);

  const auto q4 = build_hypercube(4);
  CHECK(q4.vertex_count() == 16);
  CHECK(q4.edge_count() == 32);
  for (Vertex v = 0; v < 16; ++v) CHECK(q4.degree(v) == 4);

  for (Vertex u = 0; u < 16; ++u) {
    for (int j = 0; j < 4; ++j) {
      const auto arc = q4.find_arc(u, u ^ (1u << j));
      REQUIRE(arc.has_value());
      CHECK(*arc == u * 4 + static_cast<ArcId>(j));
    }
  }
  CHECK_FALSE(q4.find_arc(0, 3).has_value());

  CHECK(code_of([] { build_hypercube(0); }) == ErrorCode::kDimension);
  CHECK(code_of([] { build_hypercube(25); }) == ErrorCode::kDimension);
  CHECK(code_of([] { build_weighted_hypercube(3, 0); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("weighted hypercube weights") {
  const auto w = build_weighted_hypercube(1, 4);
  CHECK(w.weight(0).real() == doctest::Approx(2.0));

  const auto w2 = build_weighted_hypercube(2, 2);
  for (ArcId e = 0; e < w2.arc_count(); ++e) CHECK(w2.weight(e).real() == doctest::Approx(std::sqrt(2.0)));

  const auto w41 = build_weighted_hypercube(4, 1);
  for (Vertex u = 0; u < 16; ++u) {
    double s = 0.0;
    for (ArcId e = w41.arc_begin(u); e < w41.arc_end(u); ++e) s += std::norm(w41.weight(e));
    CHECK(s == doctest::Approx(7.0));
    CHECK(w41.weight(*w41.find_arc(u, u ^ 1u)).real() == doctest::Approx(1.0));
  }

  for (int d = 1; d <= 6; ++d) {
    const Eigen::MatrixXd a = build_weighted_hypercube(d, 2).dense_weights();
    const Eigen::MatrixXd b = std::sqrt(2.0) * build_hypercube(d).dense_weights();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("choose_m") {
  CHECK(choose_m(5) == 2);
  CHECK(choose_m(4) == 1);
  CHECK(choose_m(8) == 3);
  CHECK(choose_m(6) == 1);
  CHECK(choose_m(9) == 1);
  CHECK(choose_m(10) == 1);
  CHECK_THROWS_AS(choose_m(1), Error);
  for (int d = 2; d <= 200; ++d) {
    const int m = choose_m(d);
    if (is_prime(static_cast<std::uint64_t>(d))) {
      CHECK(m == 2);
    } else {
      CHECK(m % 2 == 1);
      CHECK(is_prime(static_cast<std::uint64_t>(2 * d - 2 + m)));
      for (int smaller = 1; smaller < m; ++smaller) CHECK_FALSE(is_prime(static_cast<std::uint64_t>(2 * d - 2 + smaller)));
    }
  }
}

TEST_CASE("hermitian adjacency") {
  const auto k2 = hermitian_adjacency(build_hypercube(1));
  CHECK(k2.normalized(0, 1) == doctest::Approx(1.0));
  CHECK(k2.normalized(0, 0) == 0.0);

  const auto c4 = hermitian_adjacency(build_hypercube(2));
  Eigen::MatrixXd expected = 0.5 * build_hypercube(2).dense_weights();
  CHECK((c4.normalized - expected).cwiseAbs().maxCoeff() < 1e-15);

  // (Q_4, W_1): H_1 / 7 with H_1 = A(dir 0) + 2 sum_{j >= 1} A(dir j).
  const auto h = hermitian_adjacency(build_weighted_hypercube(4, 1));
  REQUIRE(h.integer.has_value());
  CHECK(h.integer->q == 7);
  for (Vertex a = 0; a < 16; ++a) {
    for (Vertex b = 0; b < 16; ++b) {
      const Vertex x = a ^ b;
      const std::int64_t want = x == 1 ? 1 : ((x != 0 && (x & (x - 1)) == 0) ? 2 : 0);
      CHECK(h.integer->matrix(a, b) == want);
      CHECK(h.normalized(a, b) == doctest::Approx(want / 7.0).epsilon(1e-14));
    }
  }

  for (unsigned seed = 1; seed <= 10; ++seed) {
    const auto g = testing::random_graph(2 + seed % 5, seed);
    const auto hg = hermitian_adjacency(g);
    CHECK((hg.normalized - hg.normalized.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hg.normalized);
    CHECK(solver.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
    CHECK(solver.eigenvalues().minCoeff() >= -1.0 - 1e-12);
  }
}

TEST_CASE("general graphs get an integer form when one exists") {
  const Edge path[] = {{0, 1, 1.0}, {1, 2, 1.0}};
  const auto p3 = hermitian_adjacency(WeightedGraph::from_edges(3, path));
  // Entries are 1 / sqrt(2): no integer form.
  CHECK_FALSE(p3.integer.has_value());

  const Edge cycle[] = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}, {5, 0, 1.0}};
  const auto c6 = hermitian_adjacency(WeightedGraph::from_edges(6, cycle));
  REQUIRE(c6.integer.has_value());
  CHECK(c6.integer->q == 2);
}

TEST_CASE("edge-list parsing and validation") {
  std::istringstream k2("# comment\n0 1 1.0\n");
  const auto g = parse_edge_list(k2);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);

  CHECK(code_of([] {
          std::istringstream in("0 0 1.0\n");
          parse_edge_list(in);
        }) == ErrorCode::kLoop);
  CHECK(code_of([] {
          std::istringstream in("0 1 1.0\n2 3 1.0\n");
          parse_edge_list(in);
        }) == ErrorCode::kDisconnected);
  CHECK(code_of([] {
          std::istringstream in("0 1 0\n");
          parse_edge_list(in);
        }) == ErrorCode::kZeroWeight);
  CHECK(code_of([] {
          std::istringstream in("0 1 1.0\n1 0 2.0\n");
          parse_edge_list(in);
        }) == ErrorCode::kAsymmetric);
  CHECK(code_of([] {
          std::istringstream in("0 one 1.0\n");
          parse_edge_list(in);
        }) == ErrorCode::kParse);
  CHECK(code_of([] {
          std::istringstream in("# nothing\n");
          parse_edge_list(in);
        }) == ErrorCode::kParse);

  const auto path = write_temp("pgst_test_k2.edges", "0 1 1.0\n");
  CHECK(load_graph(path).edge_count() == 1);
  CHECK(code_of([] { load_graph("/nonexistent/pgst.edges"); }) == ErrorCode::kParse);
}

TEST_CASE("complex weights are stored but excluded from H") {
  const ArcWeight arcs[] = {{0, 1, {0.0, 1.0}}, {1, 0, {0.0, -1.0}}};
  const auto g = WeightedGraph::from_arcs(2, arcs);
  CHECK_FALSE(g.is_real_symmetric());
  CHECK(code_of([&] { hermitian_adjacency(g); }) == ErrorCode::kUnsupported);
}
