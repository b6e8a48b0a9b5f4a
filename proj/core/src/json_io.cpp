#include "hdx/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "hdx/spectral.hpp"

namespace hdx {

namespace {

void write_string(std::ostream& out, const std::string& s) {
  out << Json(s).dump();
}

void write_value(std::ostream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner;
        write_string(out, it.key());
        out << ": ";
        write_value(out, it.value(), indent + 1);
      }
      out << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out << ",\n";
        first = false;
        out << inner;
        write_value(out, e, indent + 1);
      }
      out << '\n' << pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out << buf;
      return;
    }
    default:
      out << v.dump();
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
  write_value(out, value, 0);
  out << '\n';
}

std::string dump_json(const Json& value) {
  std::ostringstream ss;
  write_json(ss, value);
  return ss.str();
}

Json face_to_json(const Face& f) {
  Json a = Json::array();
  for (Vertex v : f.vertices()) a.push_back(v);
  return a;
}

Json to_json(const ExpansionReport& r, const WeightedComplex& X) {
  Json j;
  j["dimension"] = r.dimension;
  j["faces_per_level"] = Json::array();
  for (int i = -1; i <= X.dimension(); ++i) j["faces_per_level"].push_back(X.size(i));
  j["norm_convention"] = kNormConvention;
  j["gamma_hdx"] = r.hdx.gamma;
  Json per = Json::array();
  for (std::size_t l = 0; l < r.hdx.per_level.size(); ++l) {
    const auto& n = r.hdx.norms[l];
    per.push_back(Json{{"level", l}, {"gamma", n.value}, {"lower", n.lower},
                       {"upper", n.upper}, {"method", n.method}});
  }
  j["per_level_gamma"] = per;
  j["gamma_link"] = r.links.gamma;
  j["worst_link"] = face_to_json(r.links.worst);
  j["links_scanned"] = r.links.per_link.size();
  j["links_truncated"] = r.links.truncated;
  Json skipped = Json::array();
  for (const auto& s : r.links.skipped) skipped.push_back(face_to_json(s));
  j["links_skipped"] = skipped;
  Json links = Json::array();
  for (const auto& l : r.links.per_link) {
    links.push_back(Json{{"face", face_to_json(l.face)},
                         {"dimension", l.face.dimension()},
                         {"vertices", l.vertex_count},
                         {"lambda", l.lambda}});
  }
  j["per_link_lambda"] = links;
  j["equivalence"] = Json{{"gamma_hdx_le_gamma_link", r.equivalence.hdx_le_link},
                          {"gamma_link_le_3d_gamma_hdx", r.equivalence.link_le_bound},
                          {"upper_bound", r.equivalence.upper_bound},
                          {"tolerance", r.equivalence.tol}};
  j["proper"] = r.proper.proper;
  j["min_du_eigenvalue"] = r.proper.min_eigenvalue;
  if (r.proper.witness_level) {
    j["properness_witness"] = Json{{"level", *r.proper.witness_level},
                                   {"kernel_vector", vector_json(r.proper.witness)}};
  }
  Json lazy = Json::array();
  for (const auto& l : r.laziness_table) {
    lazy.push_back(Json{{"level", l.level}, {"upper_walk", l.upper}, {"lower_walk", l.lower},
                        {"nonlazy_upper_walk", l.nonlazy}});
  }
  j["laziness"] = lazy;
  return j;
}

Json to_json(const LevelDecomposition& dec, const GradedPoset& X, const WeightedComplex* complex) {
  Json j;
  j["level"] = dec.level;
  j["residual"] = dec.residual;
  j["ill_conditioned"] = dec.ill_conditioned;
  j["condition_number"] = dec.condition_number;
  j["level_weights"] = level_weights(dec, X);
  j["degree"] = degree(dec);
  if (complex && dec.has_coefficients()) {
    Json table = Json::array();
    for (int i = -1; i <= dec.level; ++i) {
      const auto& c = dec.coefficients[static_cast<std::size_t>(i + 1)];
      for (Eigen::Index s = 0; s < c.size(); ++s) {
        table.push_back(Json{{"face", face_to_json(complex->face(i, static_cast<std::size_t>(s)))},
                             {"coefficient", c[s]}});
      }
    }
    j["coefficients"] = table;
  }
  return j;
}

Json to_json(const EposetFit& fit) {
  Json levels = Json::array();
  for (std::size_t l = 0; l < fit.r.size(); ++l) {
    levels.push_back(Json{{"level", l},
                          {"r", fit.r[l]},
                          {"delta", fit.delta[l]},
                          {"residual", fit.per_level_residual[l]}});
  }
  return Json{{"gamma", fit.gamma}, {"exact", fit.exact}, {"levels", levels}};
}

Json to_json(const EposetEigentable& t) {
  Json r = Json::array(), d = Json::array();
  for (const auto& row : t.r_super) r.push_back(row);
  for (const auto& row : t.delta_super) d.push_back(row);
  Json eig = Json::array();
  for (int i = -1; i <= t.level; ++i) eig.push_back(Json{{"i", i}, {"eigenvalue", t.eigenvalue(i)}});
  return Json{{"level", t.level}, {"r_super", r}, {"delta_super", d}, {"rho", t.rho},
              {"eigenvalues", eig}};
}

Json to_json(const SdCriterion& sd) {
  Json j{{"level", sd.level}, {"applicable", sd.applicable}, {"holds", sd.holds}};
  if (sd.applicable) {
    j["alpha"] = sd.alpha;
    j["beta"] = sd.beta;
    j["delta"] = sd.delta;
    j["r"] = sd.r;
    j["walk_discrepancy"] = sd.walk_discrepancy;
  }
  if (!sd.reason.empty()) j["reason"] = sd.reason;
  return j;
}

Json to_json(const ForcingReport& rep, const GradedPoset& P) {
  Json levels = Json::array();
  for (const auto& L : rep.levels) {
    Json j{{"level", L.level},     {"r", L.r},
           {"delta", L.delta},     {"residual", L.gamma},
           {"sum_defect", L.sum_defect}};
    if (L.alpha) {
      j["alpha"] = *L.alpha;
      j["alpha_gap"] = L.alpha_gap;
    }
    j["min_lower_laziness"] = L.min_laziness;
    j["min_laziness_element"] = P.label(L.level, L.min_laziness_index);
    j["witness_defect"] = L.witness_defect;
    j["lower_laziness"] = L.lower_laziness;
    levels.push_back(j);
  }
  return Json{{"sums_within_gamma", rep.sums_within_gamma},
              {"witness_within_gamma", rep.witness_within_gamma},
              {"levels", levels}};
}

Json to_json(const OrthogonalityReport& r) {
  return Json{{"level", r.level}, {"trials", r.trials}, {"seed", r.seed},
              {"gamma", r.gamma}, {"c1", r.c1},         {"c2", r.c2},
              {"c3", r.c3},       {"c4", r.c4},         {"slack", r.slack},
              {"bound", r.bound}, {"vacuous", r.vacuous}, {"within_bound", r.within_bound}};
}

Json to_json(const FknResult& r) {
  Json labels = Json::array();
  for (std::size_t v = 0; v < r.g.vertices.size(); ++v) {
    labels.push_back(Json{{"vertex", r.g.vertices[v]}, {"label", label_name(r.g.labels[v])},
                          {"coefficient", label_value(r.g.labels[v], r.k)}});
  }
  return Json{{"k", r.k},
              {"hypothesis_4k2_lt_d", r.hypothesis_4k2_lt_d},
              {"epsilon", r.epsilon},
              {"pr_disagree", r.pr_disagree},
              {"ratio", r.epsilon > 0 ? Json(r.pr_disagree / r.epsilon) : Json(nullptr)},
              {"agreement_rate", r.agreement_rate},
              {"pr_boolean", r.pr_boolean},
              {"local_consistency", r.local_consistency},
              {"mean_epsilon_t", r.mean_epsilon_t},
              {"mean_delta_u", r.mean_delta_u},
              {"local_faces", r.local_t.size()},
              {"g", labels}};
}

}  // namespace hdx
