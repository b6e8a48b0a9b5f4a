#include <doctest.h>

#include <random>

#include "hdx/errors.hpp"
#include "hdx/expansion.hpp"
#include "hdx/operators.hpp"
#include "oracles.hpp"

using hdx::Face;

TEST_SUITE("expansion") {

TEST_CASE("gamma_hdx on complete graphs and disjoint triangles") {
  for (int n = 3; n <= 8; ++n) {
    const auto K = hdx::complete_complex(n, 1);
    const auto g = hdx::gamma_hdx(K);
    REQUIRE(g.per_level.size() == 1);
    CHECK(g.gamma == doctest::Approx(1.0 / (n - 1)).epsilon(1e-12));
    const auto e = hdx::check_equivalence(K);
    CHECK(e.gamma_link == doctest::Approx(1.0 / (n - 1)).epsilon(1e-12));
    CHECK(e.holds());
  }
  const auto T = oracle::disjoint_triangles();
  const auto g = hdx::gamma_hdx(T);
  CHECK(g.per_level[0] == doctest::Approx(1.0).epsilon(1e-12));
  const auto e = hdx::check_equivalence(T);
  CHECK(e.gamma_hdx == doctest::Approx(1.0));
  CHECK(e.gamma_link == doctest::Approx(1.0));
  CHECK(e.holds());
}

TEST_CASE("gamma_hdx matches a dense brute force") {
  for (const auto& X : {hdx::complete_complex(8, 2), oracle::random_complex(8, 2, 20, 3, true)}) {
    const auto g = hdx::gamma_hdx(X);
    for (int j = 0; j < X.dimension(); ++j) {
      const Eigen::MatrixXd DU = oracle::brute_down(X, j + 1) * oracle::brute_up(X, j);
      const Eigen::MatrixXd Mp = ((j + 2.0) / (j + 1.0)) * (DU - Eigen::MatrixXd::Identity(DU.rows(), DU.cols()) / (j + 2.0));
      Eigen::MatrixXd UD;
      if (j == 0) {
        UD = Eigen::MatrixXd::Ones(DU.rows(), 1) * oracle::brute_pi(X, 0).transpose();
      } else {
        UD = oracle::brute_up(X, j - 1) * oracle::brute_down(X, j);
      }
      CHECK(std::abs(g.per_level[static_cast<std::size_t>(j)] - oracle::sym_norm(Mp - UD, oracle::brute_pi(X, j))) <= 1e-12);
    }
  }
  CHECK(hdx::gamma_hdx(hdx::complete_complex(8, 2)).gamma < 1.0 / 3);
}

TEST_CASE("links") {
  const auto K5 = hdx::complete_complex(5, 2);
  const auto L = hdx::link(K5, Face{0});
  CHECK(L.vertices == std::vector<hdx::Vertex>{1, 2, 3, 4});
  CHECK(L.edges.size() == 6);
  for (const auto& e : L.edges) CHECK(e.weight == doctest::Approx(1.0 / 6));
  CHECK(hdx::lambda_link(L) == doctest::Approx(1.0 / 3));

  const auto T = oracle::two_triangles();
  const auto L2 = hdx::link(T, Face{2});
  CHECK(L2.vertices == std::vector<hdx::Vertex>{0, 1, 3, 4});
  REQUIRE(L2.edges.size() == 2);
  CHECK(L2.edges[0].weight == doctest::Approx(0.75));
  CHECK(L2.edges[1].weight == doctest::Approx(0.25));
  CHECK(L2.vertex_weights.sum() == doctest::Approx(1.0));

  // A_empty equals the non-lazy walk on level 0.
  for (const auto& X : {oracle::four_cycle(), oracle::random_complex(7, 1, 12, 4, true)}) {
    const auto A = hdx::link(X, Face{}).adjacency;
    const Eigen::MatrixXd M = oracle::dense(hdx::nonlazy_upper_walk(X, 0).matrix);
    CHECK((A - M).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(hdx::lambda_link(hdx::link(oracle::four_cycle(), Face{})) == doctest::Approx(1.0));
  const auto edge = hdx::WeightedComplex::from_top_faces({Face{0, 1, 2}}, {1.0});
  CHECK(hdx::lambda_link(hdx::link(edge, Face{0})) == doctest::Approx(1.0));

  CHECK_THROWS_AS(hdx::link(K5, Face{0, 1}), hdx::ValidationError);
  CHECK_THROWS_AS(hdx::link(T, Face{0, 4}), hdx::ValidationError);
}

TEST_CASE("degenerate link spectrum is undefined") {
  hdx::LinkView L;
  L.vertices = {3};
  L.vertex_weights = Eigen::VectorXd::Ones(1);
  L.adjacency = Eigen::MatrixXd::Zero(1, 1);
  CHECK_THROWS_AS(hdx::lambda_link(L), hdx::UndefinedSpectrumError);
}

TEST_CASE("gamma_link matches definition-level brute force") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto X = oracle::random_complex(8, 2, 18, seed, true);
    const auto g = hdx::gamma_link(X);
    double worst = 0.0;
    for (int i = -1; i <= X.dimension() - 2; ++i) {
      for (const Face& s : X.faces(i)) {
        const auto L = hdx::link(X, s);
        if (L.vertices.size() < 2) continue;
        const double lam = oracle::brute_link_lambda(X, s);
        CHECK(std::abs(hdx::lambda_link(L) - lam) <= 1e-12);
        CHECK(lam >= -1e-15);
        CHECK(lam <= 1.0 + 1e-12);
        worst = std::max(worst, lam);
      }
    }
    CHECK(std::abs(g.gamma - worst) <= 1e-12);
  }
  const auto K8 = hdx::complete_complex(8, 2);
  const auto g = hdx::gamma_link(K8);
  CHECK(g.gamma == doctest::Approx(1.0 / 6));
  CHECK(g.worst == Face{0});
  CHECK(g.per_link.size() == 9);
  CHECK(g.per_link.front().face == Face{});
}

TEST_CASE("gamma_link scan is deterministic across job counts and truncation") {
  const auto X = oracle::random_complex(9, 3, 30, 21, true);
  const auto a = hdx::gamma_link(X, {0, 1});
  const auto b = hdx::gamma_link(X, {0, 4});
  CHECK(a.gamma == b.gamma);
  CHECK(a.worst == b.worst);
  REQUIRE(a.per_link.size() == b.per_link.size());
  for (std::size_t i = 0; i < a.per_link.size(); ++i) CHECK(a.per_link[i].lambda == b.per_link[i].lambda);
  const auto t = hdx::gamma_link(X, {5, 2});
  CHECK(t.truncated);
  CHECK(t.per_link.size() + t.skipped.size() <= 5);
  for (std::size_t i = 0; i < t.per_link.size(); ++i) CHECK(t.per_link[i].face == a.per_link[i].face);
}

TEST_CASE("pure complexes have no degenerate links") {
  // A face of dimension <= d-2 lies in a top face, so its link has >= 2 vertices.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto X = oracle::random_complex(8, 3, 6, seed, false);
    const auto g = hdx::gamma_link(X);
    CHECK(g.skipped.empty());
    for (const auto& l : g.per_link) CHECK(l.vertex_count >= 2);
  }
  const auto Y = hdx::WeightedComplex::from_top_faces({Face{0, 1, 2, 3}, Face{3, 4, 5, 6}}, {1, 1});
  // The link of an edge is a single edge, so lambda = 1.
  CHECK(hdx::gamma_link(Y).gamma == doctest::Approx(1.0));
}

TEST_CASE("properness") {
  CHECK(hdx::check_proper(hdx::complete_complex(5, 1)).proper);
  const auto bad = hdx::check_proper(hdx::complete_complex(4, 2));
  CHECK_FALSE(bad.proper);
  REQUIRE(bad.witness_level.has_value());
  CHECK(*bad.witness_level == 1);
  const auto C4 = oracle::four_cycle();
  const auto c = hdx::check_proper(C4);
  CHECK_FALSE(c.proper);
  REQUIRE(c.witness_level.has_value());
  CHECK(*c.witness_level == 0);
  // The witness is a kernel vector of DU: the bipartition sign vector.
  const auto DU = hdx::upper_walk(C4, 0);
  const Eigen::VectorXd w = c.witness;
  CHECK((oracle::dense(DU.matrix) * w).norm() <= 1e-9 * w.norm());
  for (int n = 3; n <= 9; ++n) {
    for (int k = 0; k + 1 <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(hdx::check_proper(hdx::complete_complex(n, k)).proper == hdx::complete_complex_is_proper(n, k));
    }
  }
}

TEST_CASE("small gamma implies proper") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto X = oracle::random_complex(9, 2, 40 + static_cast<int>(seed), seed, true);
    const double g = hdx::gamma_hdx(X).gamma;
    if (g < 1.0 / 3) CHECK(hdx::check_proper(X).proper);
  }
}

TEST_CASE("localization identity") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  for (const auto& X : {hdx::complete_complex(6, 2), oracle::random_complex(8, 3, 20, 2, true), oracle::two_triangles()}) {
    for (int i = 0; i < X.dimension(); ++i) {
      for (int trial = 0; trial < 10; ++trial) {
        hdx::LevelFunction f(i, Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(X.size(i)), [&] { return N(rng); }));
        const auto [lhs, rhs] = hdx::localization_sides(X, i, f);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("analyze fills every section") {
  const auto X = hdx::complete_complex(5, 2);
  const auto r = hdx::analyze(X);
  CHECK(r.dimension == 2);
  CHECK(r.hdx.per_level.size() == 2);
  CHECK(r.proper.proper);
  CHECK(r.equivalence.holds());
  REQUIRE(r.laziness_table.size() == 2);
  CHECK(r.laziness_table[0].upper == doctest::Approx(0.5));
  CHECK(r.laziness_table[1].upper == doctest::Approx(1.0 / 3));
  CHECK(r.laziness_table[0].lower == doctest::Approx(0.2));
}

}
