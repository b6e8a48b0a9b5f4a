#include "hdxlab_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hdx/boolean_fkn.hpp"
#include "hdx/complex.hpp"
#include "hdx/decomposition.hpp"
#include "hdx/eposet.hpp"
#include "hdx/errors.hpp"
#include "hdx/expansion.hpp"
#include "hdx/grassmann.hpp"
#include "hdx/io.hpp"
#include "hdx/json_io.hpp"

namespace hdxlab_cli {

namespace {

using hdx::Json;

struct RunConfig {
  std::string out_path;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double norm_tol = 1e-10;
  double recon_tol = 1e-8;
  std::size_t max_links = 0;
  unsigned jobs = 0;
};

Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["tool"] = "hdxlab";
  j["version"] = HDXLAB_VERSION;
  j["command"] = command;
  j["norm_convention"] = hdx::kNormConvention;
  j["tolerances"] = Json{{"theorem", cfg.tol}, {"norm", cfg.norm_tol},
                         {"reconstruction", cfg.recon_tol}};
  j["seed"] = cfg.seed;
  j["max_faces"] = hdx::max_faces_guard();
  return j;
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    hdx::write_json(out, report);
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw hdx::ValidationError("cannot write '" + cfg.out_path + "'");
  hdx::write_json(f, report);
  render_table(report, out);
}

void write_text(const RunConfig& cfg, std::ostream& out, const std::string& text,
                const std::string& summary) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw hdx::ValidationError("cannot write '" + cfg.out_path + "'");
  f << text;
  out << summary << '\n';
}

const hdx::WeightedComplex& require_complex(const hdx::AnyStructure& s, const char* command) {
  if (const auto* X = std::get_if<hdx::WeightedComplex>(&s)) return *X;
  throw hdx::ValidationError(std::string(command) + " needs a simplicial complex file");
}

const hdx::GradedPoset& as_poset(const hdx::AnyStructure& s) {
  if (const auto* X = std::get_if<hdx::WeightedComplex>(&s)) return X->poset();
  return std::get<hdx::GradedPoset>(s);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int cmd_gen(const std::vector<std::string>& spec, const RunConfig& cfg, std::ostream& out) {
  if (spec.empty()) throw hdx::ValidationError("gen needs 'complete N D', 'grassmann Q N D' or 'file PATH'");
  auto num = [&](std::size_t i) {
    if (i >= spec.size()) throw hdx::ValidationError("gen " + spec[0] + ": missing argument");
    try {
      std::size_t used = 0;
      const int v = std::stoi(spec[i], &used);
      if (used != spec[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::logic_error&) {
      throw hdx::ValidationError("gen " + spec[0] + ": '" + spec[i] + "' is not an integer");
    }
  };
  std::ostringstream text;
  std::string summary;
  if (spec[0] == "complete") {
    if (spec.size() != 3) throw hdx::ValidationError("usage: gen complete N D");
    const auto X = hdx::complete_complex(num(1), num(2));
    hdx::write_complex(text, X);
    summary = "complete complex: " + std::to_string(X.size(X.dimension())) + " top faces";
  } else if (spec[0] == "grassmann") {
    if (spec.size() != 4) throw hdx::ValidationError("usage: gen grassmann Q N D");
    const auto P = hdx::grassmann_poset(num(1), num(2), num(3));
    hdx::write_poset(text, P);
    summary = "Grassmann poset:";
    for (int i = 0; i <= P.dimension(); ++i) summary += " " + std::to_string(P.size(i));
  } else if (spec[0] == "file") {
    if (spec.size() != 2) throw hdx::ValidationError("usage: gen file PATH");
    const auto S = hdx::read_structure_file(spec[1]);
    if (const auto* X = std::get_if<hdx::WeightedComplex>(&S)) {
      hdx::write_complex(text, *X);
      summary = "complex: " + std::to_string(X->size(X->dimension())) + " top faces";
    } else {
      const auto& P = std::get<hdx::GradedPoset>(S);
      hdx::write_poset(text, P);
      summary = "poset of dimension " + std::to_string(P.dimension());
    }
  } else {
    throw hdx::ValidationError("unknown generator '" + spec[0] + "'");
  }
  write_text(cfg, out, text.str(), summary);
  return kOk;
}

int cmd_analyze(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto S = hdx::read_structure_file(path);
  const auto& X = require_complex(S, "analyze");
  hdx::NormOptions norm;
  norm.tol = cfg.norm_tol;
  hdx::LinkScanOptions scan{cfg.max_links, cfg.jobs};
  const auto rep = hdx::analyze(X, norm, scan, cfg.tol);
  Json j = header("analyze", cfg);
  j["input"] = path;
  j["report"] = hdx::to_json(rep, X);
  emit(j, cfg, out);
  return kOk;
}

int cmd_decompose(const std::string& path, const std::string& fn_path, const RunConfig& cfg,
                  std::ostream& out) {
  const auto S = hdx::read_structure_file(path);
  const auto f = hdx::read_function_file(fn_path, S);
  hdx::DecompositionOptions opt;
  opt.residual_tol = cfg.recon_tol;
  Json j = header("decompose", cfg);
  j["input"] = path;
  j["function"] = fn_path;
  if (const auto* X = std::get_if<hdx::WeightedComplex>(&S)) {
    const auto dec = hdx::decompose(*X, f, opt);
    j["report"] = hdx::to_json(dec, X->poset(), X);
    j["report"]["harmonicity_defect"] = hdx::harmonicity_defect(*X, dec);
  } else {
    const auto& P = std::get<hdx::GradedPoset>(S);
    const auto dec = hdx::decompose(P, f, opt);
    j["report"] = hdx::to_json(dec, P);
  }
  emit(j, cfg, out);
  return kOk;
}

int cmd_eposet_fit(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto S = hdx::read_structure_file(path);
  const auto& P = as_poset(S);
  hdx::FitOptions opt;
  opt.exact_tol = cfg.tol;
  opt.norm.tol = cfg.norm_tol;
  const auto fit = hdx::fit_eposet(P, opt);
  Json j = header("eposet-fit", cfg);
  j["input"] = path;
  Json rep = hdx::to_json(fit);
  Json sd = Json::array(), tables = Json::array();
  for (int l = 0; l < P.dimension(); ++l) {
    sd.push_back(hdx::to_json(hdx::check_sd_criterion(P, l, fit, cfg.tol)));
    tables.push_back(hdx::to_json(hdx::eigentable(fit, l)));
  }
  rep["sd_criterion"] = sd;
  rep["eigentables"] = tables;
  rep["forcing"] = hdx::to_json(hdx::laziness_forcing_check(P, fit, cfg.tol), P);
  j["report"] = rep;
  emit(j, cfg, out);
  return kOk;
}

int cmd_fkn(const std::string& path, const std::string& fn_path, const std::vector<double>& eps,
            int seeds, const RunConfig& cfg, std::ostream& out) {
  const auto S = hdx::read_structure_file(path);
  const auto& X = require_complex(S, "fkn");
  const auto F = hdx::read_function_file(fn_path, S);
  if (seeds < 1) throw hdx::ValidationError("--seeds must be positive");
  hdx::FknOptions opt{cfg.jobs, cfg.tol};
  Json j = header("fkn", cfg);
  j["input"] = path;
  j["function"] = fn_path;
  Json runs = Json::array(), aggregate = Json::array();
  for (double e : eps) {
    std::vector<double> pr, ratio;
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
      const auto noisy = hdx::flip_noise(X, F, e, seed);
      const auto res = hdx::fkn_recover(X, noisy.noisy, opt);
      double vs_clean = 0.0;
      const auto& w = X.weights(F.level);
      for (std::size_t t = 0; t < X.size(F.level); ++t) {
        if (std::abs(res.g.evaluate(X.face(F.level, t)) - F.values[static_cast<Eigen::Index>(t)]) > cfg.tol) {
          vs_clean += w[static_cast<Eigen::Index>(t)];
        }
      }
      Json r = hdx::to_json(res);
      r["eps"] = e;
      r["seed"] = seed;
      r["flipped_mass"] = noisy.flipped_mass;
      r["flipped"] = noisy.flipped;
      r["pr_disagree_clean"] = vs_clean;
      runs.push_back(r);
      pr.push_back(res.pr_disagree);
      if (e > 0) ratio.push_back(res.pr_disagree / e);
    }
    double mean = 0.0;
    for (double p : pr) mean += p / static_cast<double>(pr.size());
    Json a{{"eps", e}, {"seeds", seeds}, {"median_pr_disagree", median(pr)},
           {"mean_pr_disagree", mean},
           {"max_pr_disagree", *std::max_element(pr.begin(), pr.end())}};
    a["median_pr_over_eps"] = ratio.empty() ? Json(nullptr) : Json(median(ratio));
    aggregate.push_back(a);
  }
  j["report"] = Json{{"runs", runs}, {"aggregate", aggregate}};
  emit(j, cfg, out);
  return kOk;
}

int cmd_report(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw hdx::ValidationError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw hdx::ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
  render_table(j, out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral and Boolean analysis of high-dimensional expanders", "hdxlab"};
  app.set_version_flag("--version", std::string(HDXLAB_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--out", cfg.out_path, "Write the JSON report here and print a table");
  app.add_option("--seed", cfg.seed, "Base random seed");
  app.add_option("--tol", cfg.tol, "Tolerance for theorem inequalities and exactness")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-links", cfg.max_links, "Bound on the number of links scanned (0 = all)");
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");

  std::vector<std::string> gen_spec;
  auto* gen = app.add_subcommand("gen", "Generate or normalize a complex or poset");
  gen->add_option("spec", gen_spec, "complete N D | grassmann Q N D | file PATH")->required();

  std::string path, fn_path;
  auto* analyze = app.add_subcommand("analyze", "Expansion report of a complex");
  analyze->add_option("complex", path)->required();

  auto* dec = app.add_subcommand("decompose", "Level decomposition of a function");
  dec->add_option("structure", path)->required();
  dec->add_option("function", fn_path)->required();

  auto* fit = app.add_subcommand("eposet-fit", "Fit eposet parameters");
  fit->add_option("structure", path)->required();

  std::vector<double> eps{0.0};
  int seeds = 1;
  auto* fkn = app.add_subcommand("fkn", "FKN recovery experiment");
  fkn->add_option("complex", path)->required();
  fkn->add_option("function", fn_path)->required();
  fkn->add_option("--eps", eps, "Noise rates")->delimiter(',');
  fkn->add_option("--seeds", seeds, "Seeds per noise rate");

  auto* report = app.add_subcommand("report", "Print tables for a JSON report");
  report->add_option("json", path)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << HDXLAB_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    for (double e : eps) {
      if (!(e >= 0.0 && e <= 1.0)) throw hdx::ValidationError("--eps values must lie in [0, 1]");
    }
    if (*gen) return cmd_gen(gen_spec, cfg, out);
    if (*analyze) return cmd_analyze(path, cfg, out);
    if (*dec) return cmd_decompose(path, fn_path, cfg, out);
    if (*fit) return cmd_eposet_fit(path, cfg, out);
    if (*fkn) return cmd_fkn(path, fn_path, eps, seeds, cfg, out);
    if (*report) return cmd_report(path, out);
  } catch (const hdx::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const hdx::NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace hdxlab_cli
