#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "hdx/errors.hpp"
#include "hdx/grassmann.hpp"
#include "hdx/io.hpp"
#include "hdx/json_io.hpp"
#include "oracles.hpp"

using hdx::Face;

namespace {

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)hdx::read_complex(in);
  } catch (const hdx::ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("complex files") {
  std::istringstream in("# two triangles\ndim 2\n0 1 2 : 0.75\n\n2 3 4 : 0.25  # second\n");
  const auto X = hdx::read_complex(in);
  CHECK(X.dimension() == 2);
  CHECK(X.size(2) == 2);
  CHECK(X.weights(2)[0] == doctest::Approx(0.75));
  std::ostringstream out;
  hdx::write_complex(out, X);
  std::istringstream back(out.str());
  const auto Y = hdx::read_complex(back);
  CHECK(Y.faces(2) == X.faces(2));
  CHECK(Y.weights(0) == X.weights(0));
}

TEST_CASE("complex file errors name the line") {
  CHECK(error_of("dim 2\n0 1 2 : 1\n0 1 : 1\n").find("line 3") != std::string::npos);
  CHECK(error_of("dim 1\n0 1 : -1\n").find("line 2") != std::string::npos);
  CHECK(error_of("dim 1\n0 1 1\n").find("line 2") != std::string::npos);
  CHECK(error_of("dimension 1\n").find("line 1") != std::string::npos);
  CHECK_FALSE(error_of("dim 1\n0 x : 1\n").empty());
  std::istringstream mixed("dim 2\n0 1 2 : 1\n0 1 : 1\n");
  CHECK_THROWS_AS(hdx::read_complex(mixed), hdx::DimensionMismatchError);
}

TEST_CASE("poset files round trip") {
  const auto G = hdx::grassmann_poset(2, 3, 1);
  std::ostringstream out;
  hdx::write_poset(out, G);
  std::istringstream in(out.str());
  const auto H = hdx::read_poset(in);
  for (int i = -1; i <= 1; ++i) {
    REQUIRE(H.size(i) == G.size(i));
    for (std::size_t t = 0; t < G.size(i); ++t) CHECK(H.label(i, t) == G.label(i, t));
    CHECK((H.weights(i) - G.weights(i)).cwiseAbs().maxCoeff() <= 1e-15);
  }
  CHECK((oracle::dense(H.down_transition(1)) - oracle::dense(G.down_transition(1))).cwiseAbs().maxCoeff() <= 1e-15);
  std::istringstream bad("poset 0\nelement -1 0 root\nelement 0 0 a 1\nelement 0 1 b 1\ncover 0 0 0 1\n");
  CHECK_THROWS_AS(hdx::read_poset(bad), hdx::ValidationError);
}

TEST_CASE("function files") {
  const auto X = hdx::complete_complex(3, 1);
  std::istringstream in("0 1 : 1\n0 2 : 0\n1 2 : 0.5\n");
  const auto f = hdx::read_function(in, X);
  CHECK(f.level == 1);
  CHECK(f.values[2] == 0.5);
  std::ostringstream out;
  hdx::write_function(out, f, X);
  std::istringstream back(out.str());
  CHECK(hdx::read_function(back, X).values == f.values);
  std::istringstream missing("0 1 : 1\n0 2 : 0\n");
  CHECK_THROWS_AS(hdx::read_function(missing, X), hdx::ValidationError);
  std::istringstream twice("0 1 : 1\n0 1 : 0\n1 2 : 0\n");
  CHECK_THROWS_AS(hdx::read_function(twice, X), hdx::ValidationError);
  std::istringstream mixed("0 1 : 1\n0 : 0\n");
  CHECK_THROWS_AS(hdx::read_function(mixed, X), hdx::ValidationError);
  std::istringstream unknown("0 1 : 1\n0 2 : 0\n1 5 : 0\n");
  CHECK_THROWS_AS(hdx::read_function(unknown, X), hdx::ValidationError);
  const auto G = hdx::grassmann_poset(2, 2, 0);
  std::ostringstream lab;
  for (std::size_t t = 0; t < G.size(0); ++t) lab << G.label(0, t) << " : " << t << "\n";
  std::istringstream lin(lab.str());
  const auto g = hdx::read_function(lin, G);
  CHECK(g.level == 0);
  CHECK(g.values[2] == 2.0);
}

TEST_CASE("json writer") {
  hdx::Json j;
  j["b"] = 0.1;
  j["a"] = std::numeric_limits<double>::infinity();
  j["c"] = hdx::Json::array({1, 2});
  const std::string s = hdx::dump_json(j);
  CHECK(s.find("\"b\": 0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"a\": null") != std::string::npos);
  CHECK(s.find("\"b\"") < s.find("\"a\""));
  CHECK(hdx::dump_json(j) == s);
  CHECK(hdx::face_to_json(Face{}).dump() == "[]");
}

}
