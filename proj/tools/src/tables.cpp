#include <algorithm>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <string>

#include "hdxlab_cli/cli.hpp"

namespace hdxlab_cli {

namespace {

using Json = nlohmann::ordered_json;

std::string num(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string field(const Json& obj, const char* key) {
  return obj.contains(key) ? num(obj[key]) : "-";
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

// Header line plus one row per element of `rows`, columns taken from `keys`.
void grid(std::ostream& out, const Json& rows, std::initializer_list<const char*> keys) {
  auto width = [](const char* k) { return std::max<std::size_t>(14, std::strlen(k) + 2); };
  for (const char* k : keys) out << pad(k, width(k));
  out << '\n';
  for (const auto& r : rows) {
    for (const char* k : keys) out << pad(field(r, k), width(k));
    out << '\n';
  }
}

void analyze_table(const Json& r, std::ostream& out) {
  out << "dimension      " << field(r, "dimension") << '\n'
      << "gamma_hdx      " << field(r, "gamma_hdx") << '\n'
      << "gamma_link     " << field(r, "gamma_link") << "  (worst link " << field(r, "worst_link")
      << ", " << field(r, "links_scanned") << " scanned)\n"
      << "proper         " << field(r, "proper") << '\n';
  if (r.contains("equivalence")) {
    const auto& e = r["equivalence"];
    out << "equivalence    hdx<=link " << field(e, "gamma_hdx_le_gamma_link")
        << ", link<=3d*hdx " << field(e, "gamma_link_le_3d_gamma_hdx") << '\n';
  }
  out << '\n';
  if (r.contains("per_level_gamma")) grid(out, r["per_level_gamma"], {"level", "gamma", "lower", "upper", "method"});
  out << '\n';
  if (r.contains("laziness")) grid(out, r["laziness"], {"level", "upper_walk", "lower_walk", "nonlazy_upper_walk"});
}

void decompose_table(const Json& r, std::ostream& out) {
  out << "level          " << field(r, "level") << '\n'
      << "degree         " << field(r, "degree") << '\n'
      << "residual       " << field(r, "residual") << '\n'
      << "condition      " << field(r, "condition_number")
      << (r.value("ill_conditioned", false) ? "  (ill-conditioned)" : "") << '\n';
  if (r.contains("harmonicity_defect")) out << "harmonicity    " << field(r, "harmonicity_defect") << '\n';
  out << '\n' << pad("part", 14) << "squared norm\n";
  if (r.contains("level_weights")) {
    int i = -1;
    for (const auto& w : r["level_weights"]) out << pad(std::to_string(i++), 14) << num(w) << '\n';
  }
}

void eposet_table(const Json& r, std::ostream& out) {
  out << "gamma          " << field(r, "gamma") << '\n'
      << "exact          " << field(r, "exact") << "\n\n";
  if (r.contains("levels")) grid(out, r["levels"], {"level", "r", "delta", "residual"});
  if (r.contains("sd_criterion")) {
    out << '\n';
    grid(out, r["sd_criterion"], {"level", "applicable", "holds", "alpha", "beta", "r", "delta"});
  }
  if (r.contains("forcing")) {
    out << '\n';
    grid(out, r["forcing"]["levels"], {"level", "sum_defect", "residual", "min_lower_laziness", "witness_defect"});
  }
}

void fkn_table(const Json& r, std::ostream& out) {
  if (r.contains("runs")) grid(out, r["runs"], {"eps", "seed", "epsilon", "pr_disagree", "ratio", "agreement_rate"});
  out << '\n';
  if (r.contains("aggregate")) grid(out, r["aggregate"], {"eps", "seeds", "median_pr_disagree", "mean_pr_disagree", "max_pr_disagree", "median_pr_over_eps"});
}

}  // namespace

void render_table(const Json& report, std::ostream& out) {
  const std::string command = report.value("command", "");
  out << "hdxlab " << report.value("version", "?") << "  " << command
      << "  seed " << field(report, "seed") << "  norm " << report.value("norm_convention", "?") << '\n';
  if (report.contains("input")) out << "input          " << num(report["input"]) << '\n';
  out << '\n';
  if (!report.contains("report")) {
    out << "(no report body)\n";
    return;
  }
  const Json& body = report["report"];
  if (command == "analyze") analyze_table(body, out);
  else if (command == "decompose") decompose_table(body, out);
  else if (command == "eposet-fit") eposet_table(body, out);
  else if (command == "fkn") fkn_table(body, out);
  else out << body.dump(2) << '\n';
}

}  // namespace hdxlab_cli
