#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hdxlab_cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hdxlab_cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hdxlab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen") {
  const auto r = run({"gen", "complete", "5", "2"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int faces = 0;
  std::getline(in, line);
  CHECK(line == "dim 2");
  while (std::getline(in, line)) faces += !line.empty();
  CHECK(faces == 10);

  const auto g = run({"gen", "grassmann", "2", "3", "1"});
  CHECK(g.code == 0);
  std::size_t e0 = 0, e1 = 0;
  std::istringstream gin(g.out);
  while (std::getline(gin, line)) {
    e0 += line.rfind("element 0 ", 0) == 0;
    e1 += line.rfind("element 1 ", 0) == 0;
  }
  CHECK(e0 == 7);
  CHECK(e1 == 7);

  const auto bad = scratch("bad.cplx");
  write(bad, "dim 2\n0 1 2 : 1\n0 1 : 1\n");
  const auto b = run({"gen", "file", bad.string()});
  CHECK(b.code == 2);
  CHECK(b.err.find("line 3") != std::string::npos);
  CHECK(run({"gen", "complete", "3", "5"}).code == 2);
  CHECK(run({"gen", "complete", "x", "2"}).code == 2);
  CHECK(run({"gen", "sphere"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"--tol", "0", "gen", "complete", "5", "2"}).code == 2);
}

TEST_CASE("analyze on K5") {
  const auto path = scratch("k5.cplx");
  REQUIRE(run({"gen", "complete", "5", "2", "--out", path.string()}).code == 0);
  const auto r = run({"analyze", path.string(), "--seed", "9"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["tool"] == "hdxlab");
  CHECK(j["command"] == "analyze");
  CHECK(j["norm_convention"] == "pi-weighted-spectral");
  CHECK(j["seed"] == 9);
  CHECK(j["tolerances"]["theorem"] == 1e-9);
  CHECK(j["report"]["proper"] == true);
  CHECK(j["report"]["gamma_hdx"].get<double>() == doctest::Approx(1.0 / 3));
  CHECK(j["report"]["gamma_link"].get<double>() == doctest::Approx(1.0 / 3));
  // Byte-identical on rerun.
  CHECK(run({"analyze", path.string(), "--seed", "9"}).out == r.out);
  // With --out the JSON goes to the file and a table to stdout.
  const auto jp = scratch("k5.json");
  const auto t = run({"--out", jp.string(), "analyze", path.string(), "--seed", "9"});
  CHECK(t.code == 0);
  CHECK(t.out.find("gamma_hdx") != std::string::npos);
  std::ifstream f(jp);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.out);
  const auto rep = run({"report", jp.string()});
  CHECK(rep.code == 0);
  CHECK(rep.out == t.out);
  const auto g = scratch("g.poset");
  REQUIRE(run({"gen", "grassmann", "2", "3", "1", "--out", g.string()}).code == 0);
  CHECK(run({"analyze", g.string()}).code == 2);
  CHECK(run({"analyze", scratch("missing.cplx").string()}).code == 2);
}

TEST_CASE("decompose constant function") {
  const auto path = scratch("k5b.cplx");
  REQUIRE(run({"gen", "complete", "5", "2", "--out", path.string()}).code == 0);
  std::ostringstream fn;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c) fn << a << ' ' << b << ' ' << c << " : 2\n";
  const auto fp = scratch("const.fn");
  write(fp, fn.str());
  const auto r = run({"decompose", path.string(), fp.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& w = j["report"]["level_weights"];
  REQUIRE(w.size() == 4);
  CHECK(w[0].get<double>() == doctest::Approx(4.0));
  for (std::size_t i = 1; i < 4; ++i) CHECK(w[i].get<double>() == 0.0);
  CHECK(j["report"]["degree"] == 0);
  const auto improper = scratch("k4.cplx");
  REQUIRE(run({"gen", "complete", "4", "2", "--out", improper.string()}).code == 0);
  std::ostringstream fn4;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) fn4 << a << ' ' << b << ' ' << c << " : 1\n";
  const auto fp4 = scratch("k4.fn");
  write(fp4, fn4.str());
  const auto e = run({"decompose", improper.string(), fp4.string()});
  CHECK(e.code == 2);
}

TEST_CASE("eposet-fit and fkn") {
  const auto g = scratch("g2.poset");
  REQUIRE(run({"gen", "grassmann", "2", "4", "1", "--out", g.string()}).code == 0);
  const auto r = run({"eposet-fit", g.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["exact"] == true);
  CHECK(j["report"]["levels"][0]["r"].get<double>() == doctest::Approx(2.0 / 7));
  CHECK(j["report"]["sd_criterion"][0]["holds"] == true);

  const auto X = scratch("k9.cplx");
  REQUIRE(run({"gen", "complete", "9", "4", "--out", X.string()}).code == 0);
  std::ostringstream fn;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b) fn << a << ' ' << b << " : " << (a == 0 ? 1 : 0) << "\n";
  const auto fp = scratch("dict.fn");
  write(fp, fn.str());
  const auto f = run({"fkn", X.string(), fp.string(), "--eps", "0", "--jobs", "2"});
  REQUIRE(f.code == 0);
  const auto fj = nlohmann::json::parse(f.out);
  CHECK(fj["report"]["runs"][0]["pr_disagree"] == 0.0);
  const auto n = run({"fkn", X.string(), fp.string(), "--eps", "0.1,0.2", "--seeds", "2", "--seed", "5"});
  REQUIRE(n.code == 0);
  const auto nj = nlohmann::json::parse(n.out);
  CHECK(nj["report"]["runs"].size() == 4);
  CHECK(nj["report"]["aggregate"].size() == 2);
  CHECK(nj["report"]["runs"][1]["seed"] == 6);
  CHECK(run({"fkn", X.string(), fp.string(), "--eps", "1.5"}).code == 2);
}

}
