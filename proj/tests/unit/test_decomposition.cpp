#include <doctest.h>

#include <random>

#include "hdx/boolean_fkn.hpp"
#include "hdx/decomposition.hpp"
#include "hdx/errors.hpp"
#include "hdx/eposet.hpp"
#include "hdx/expansion.hpp"
#include "hdx/grassmann.hpp"
#include "hdx/operators.hpp"
#include "oracles.hpp"

using hdx::Face;
using hdx::LevelFunction;

namespace {

LevelFunction random_function(const hdx::GradedPoset& X, int level, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  return {level, Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(X.size(level)), [&] { return N(rng); })};
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("constant function") {
  const auto X = hdx::complete_complex(6, 2);
  const auto dec = hdx::decompose(X, LevelFunction::constant(2, X.size(2), 3.0));
  CHECK(dec.part(-1).values.minCoeff() == doctest::Approx(3.0));
  CHECK(dec.harmonic_part(-1).values[0] == doctest::Approx(3.0));
  const auto w = hdx::level_weights(dec, X);
  CHECK(w[0] == doctest::Approx(9.0));
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] == 0.0);
  CHECK(hdx::degree(dec) == 0);
}

TEST_CASE("zero function") {
  const auto X = hdx::complete_complex(6, 2);
  const auto dec = hdx::decompose(X, LevelFunction::constant(1, X.size(1), 0.0));
  CHECK(dec.residual == 0.0);
  CHECK(hdx::degree(dec) == 0);
  for (int i = -1; i <= 1; ++i) CHECK(dec.part(i).values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("centered vertex indicator on K5 edges") {
  const auto X = hdx::complete_complex(5, 2);
  auto f = hdx::y_function(X, Face{2}, 1);
  f.values.array() -= hdx::inner_product(f, LevelFunction::constant(1, X.size(1), 1.0), X);
  const auto dec = hdx::decompose(X, f);
  CHECK(oracle::pi_norm2(dec.part(0).values, X.weights(1)) > 0.1);
  CHECK(oracle::pi_norm2(dec.part(1).values, X.weights(1)) <= 1e-24);
  CHECK(std::abs(dec.part(-1).values[0]) <= 1e-12);
  CHECK(hdx::degree(dec) == 1);
  // Harmonicity checked by enumeration: sum_v Pi_0(v) ~f(v) = 0.
  const auto& c0 = dec.coefficients[1];
  CHECK(std::abs((X.weights(0).array() * c0.array()).sum()) <= 1e-12);
}

TEST_CASE("random functions on complete complexes: exact orthogonality and eigenrelation") {
  std::mt19937_64 rng(5);
  const auto X = hdx::complete_complex(8, 3);
  const int l = 2;
  const auto DU = hdx::upper_walk(X, l);
  // Exact eigenvalues come from the closed-form parameters, not 1 - (i+1)/(l+2).
  const auto table = hdx::eigentable(hdx::fit_eposet(X), l);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_function(X, l, rng);
    const auto dec = hdx::decompose(X, f);
    CHECK(dec.residual <= 1e-9);
    CHECK(hdx::harmonicity_defect(X, dec) <= 1e-9);
    const auto& pi = X.weights(l);
    double total = 0.0;
    for (int i = -1; i <= l; ++i) {
      total += oracle::pi_norm2(dec.part(i).values, pi);
      for (int j = i + 1; j <= l; ++j) {
        CHECK(std::abs(oracle::pi_dot(dec.part(i).values, dec.part(j).values, pi)) <= 1e-9 * std::sqrt(oracle::pi_norm2(f.values, pi)) * std::sqrt(oracle::pi_norm2(f.values, pi)));
      }
      const double lambda = table.eigenvalue(i);
      const Eigen::VectorXd r = DU.apply(dec.part(i)).values - lambda * dec.part(i).values;
      CHECK(std::sqrt(oracle::pi_norm2(r, pi)) <= 1e-9 * std::sqrt(oracle::pi_norm2(f.values, pi)));
    }
    CHECK(std::abs(total - oracle::pi_norm2(f.values, pi)) <= 1e-9 * oracle::pi_norm2(f.values, pi));
  }
}

TEST_CASE("structure of the parts") {
  std::mt19937_64 rng(9);
  for (const auto& X : {hdx::complete_complex(7, 3), oracle::random_complex(8, 2, 44, 6, true)}) {
    REQUIRE(hdx::check_proper(X).proper);
    const int l = X.dimension();
    const auto f = random_function(X, l, rng);
    const auto dec = hdx::decompose(X, f);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(f.values.size());
    for (int i = -1; i <= l; ++i) {
      sum += dec.part(i).values;
      if (i >= 0) {
        const auto Dh = hdx::down_operator(X, i).apply(dec.harmonic_part(i));
        CHECK(Dh.values.cwiseAbs().maxCoeff() <= 1e-9 * f.values.cwiseAbs().maxCoeff());
      }
      const auto lifted = hdx::up_power(X, i, l - i).apply(dec.harmonic_part(i));
      CHECK((lifted.values - dec.part(i).values).cwiseAbs().maxCoeff() <= 1e-12 * f.values.cwiseAbs().maxCoeff());
    }
    CHECK((sum - f.values).cwiseAbs().maxCoeff() <= 1e-9 * f.values.cwiseAbs().maxCoeff());
    // project_below(l) is f itself.
    CHECK((hdx::project_below(dec, l).values - f.values).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((hdx::project_below(dec, -1).values - dec.part(-1).values).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("uniqueness across the two split solvers") {
  std::mt19937_64 rng(13);
  const auto X = oracle::random_complex(8, 2, 44, 8, true);
  REQUIRE(hdx::check_proper(X).proper);
  hdx::DecompositionOptions ne;
  ne.solver = hdx::SplitSolver::normal_equations;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_function(X, 2, rng);
    const auto a = hdx::decompose(X, f);
    const auto b = hdx::decompose(X, f, ne);
    for (int i = -1; i <= 2; ++i) {
      CHECK((a.part(i).values - b.part(i).values).cwiseAbs().maxCoeff() <= 1e-9 * f.values.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("harmonic dimensions and y basis rank") {
  for (const auto& X : {hdx::complete_complex(7, 2), oracle::random_complex(8, 2, 44, 6, true), oracle::punctured_k6()}) {
    REQUIRE(hdx::check_proper(X).proper);
    const hdx::Decomposer dc(X, X.dimension());
    for (int i = 0; i <= X.dimension(); ++i) {
      CHECK(dc.harmonic_dimension(i) == static_cast<int>(X.size(i) - X.size(i - 1)));
    }
    for (int j = -1; j <= X.dimension(); ++j)
      for (int k = std::max(j, 0); k <= X.dimension(); ++k)
        CHECK(hdx::y_basis_rank(X, j, k) == static_cast<int>(X.size(j)));
  }
}

TEST_CASE("y_t as a sum of higher y functions") {
  const auto X = hdx::complete_complex(6, 3);
  const int k = 3;
  for (int j = 0; j <= k; ++j) {
    const Face t{1, 4};
    if (static_cast<int>(t.size()) > j + 1) continue;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(X.size(k)));
    for (const Face& s : X.faces(j))
      if (t.is_subset_of(s)) sum += hdx::y_function(X, s, k).values;
    const double c = oracle::binom(k + 1 - static_cast<int>(t.size()), j + 1 - static_cast<int>(t.size()));
    CHECK((sum / c - hdx::y_function(X, t, k).values).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("degree") {
  const auto X = hdx::complete_complex(7, 2);
  CHECK(hdx::degree(hdx::decompose(X, hdx::y_function(X, Face{3}, 2))) == 1);
  const auto y = hdx::y_function(X, Face{1, 5}, 2);
  CHECK(hdx::degree(hdx::decompose(X, y)) == 2);
  const auto best = hdx::best_degree_one_approximation(X, y);
  LevelFunction r(2, y.values - best.values);
  CHECK(hdx::degree(hdx::decompose(X, r)) == 2);
  CHECK(hdx::degree(hdx::decompose(X, best)) <= 1);
}

TEST_CASE("coefficient scale") {
  CHECK(hdx::coefficient_scale(2, 2) == 1.0);
  CHECK(hdx::coefficient_scale(-1, 2) == doctest::Approx(1.0));
  CHECK(hdx::coefficient_scale(0, 2) == doctest::Approx(1.0 / 3));
  CHECK(hdx::coefficient_scale(1, 3) == doctest::Approx(1.0 / 6));
}

TEST_CASE("improper complexes are refused with the level") {
  const auto X = hdx::complete_complex(4, 2);
  try {
    (void)hdx::decompose(X, LevelFunction::constant(2, X.size(2), 1.0));
    FAIL("expected PropernessError");
  } catch (const hdx::PropernessError& e) {
    CHECK(e.level() == 1);
  }
  CHECK_NOTHROW(hdx::decompose(X, LevelFunction::constant(1, X.size(1), 1.0)));
  CHECK_THROWS_AS(hdx::decompose(oracle::four_cycle(), LevelFunction::constant(1, 4, 1.0)), hdx::PropernessError);
}

TEST_CASE("approximate orthogonality report") {
  const auto K = hdx::complete_complex(9, 3);
  const auto r = hdx::verify_approximate_orthogonality(K, 2, 10, 4);
  CHECK(r.c1 <= 1e-9);
  CHECK(r.c2 <= 1e-9);
  CHECK(r.within_bound);
  // Eigenspaces are exact; under the exact eigenvalues c3 and c4 vanish too.
  const auto exact = hdx::verify_approximate_orthogonality(K, 2, hdx::eposet_eigenvalue_model(hdx::fit_eposet(K), 2), 10, 4);
  CHECK(exact.c1 <= 1e-9);
  CHECK(exact.c3 <= 1e-9);
  CHECK(exact.c4 <= 1e-9);
  CHECK_FALSE(r.vacuous);
  const auto T = hdx::verify_approximate_orthogonality(oracle::disjoint_triangles(), 1, 5, 1);
  CHECK(T.vacuous);
  CHECK(T.within_bound);
  const auto model = hdx::hdx_eigenvalue_model(2, 0.1);
  REQUIRE(model.lambda.size() == 4);
  CHECK(model.lambda[0] == doctest::Approx(1.0));
  CHECK(model.lambda[3] == doctest::Approx(0.25));
  const auto again = hdx::verify_approximate_orthogonality(K, 2, 10, 4);
  CHECK(again.c2 == r.c2);
}

TEST_CASE("poset decomposition on Grassmann posets") {
  std::mt19937_64 rng(17);
  // Proper only below the middle dimension, where levels grow.
  const auto G = hdx::grassmann_poset(2, 5, 1);
  for (int l = 0; l <= 1; ++l) {
    const auto f = random_function(G, l, rng);
    const auto dec = hdx::decompose(G, f);
    CHECK_FALSE(dec.has_coefficients());
    const auto& pi = G.weights(l);
    for (int i = -1; i <= l; ++i)
      for (int j = i + 1; j <= l; ++j)
        CHECK(std::abs(oracle::pi_dot(dec.part(i).values, dec.part(j).values, pi)) <= 1e-9 * oracle::pi_norm2(f.values, pi));
  }
  CHECK_THROWS_AS(hdx::decompose(hdx::grassmann_poset(2, 4, 2), hdx::LevelFunction::constant(2, 15, 1.0)), hdx::PropernessError);
}

}
