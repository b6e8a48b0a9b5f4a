#include "hdx/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "hdx/errors.hpp"
#include "hdx/operators.hpp"
#include "hdx/parallel.hpp"

namespace hdx {

namespace {

struct RawEdge {
  Vertex x, y;
  double mass;  // Pi_{i+2}(s ∪ {x, y})
};

LinkView assemble_link(const WeightedComplex& X, const Face& s, const std::vector<RawEdge>& raw) {
  const int i = s.dimension();
  const double base = X.weights(i)[static_cast<Eigen::Index>(*X.index_of(s))];
  LinkView L;
  L.base = s;
  for (const auto& e : raw) {
    L.vertices.push_back(e.x);
    L.vertices.push_back(e.y);
  }
  std::sort(L.vertices.begin(), L.vertices.end());
  L.vertices.erase(std::unique(L.vertices.begin(), L.vertices.end()), L.vertices.end());
  const auto m = static_cast<Eigen::Index>(L.vertices.size());
  auto pos = [&](Vertex v) {
    return static_cast<std::size_t>(
        std::lower_bound(L.vertices.begin(), L.vertices.end(), v) - L.vertices.begin());
  };
  L.vertex_weights.resize(m);
  const Eigen::VectorXd& w1 = X.weights(i + 1);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto idx = X.index_of(s.with_vertex(L.vertices[static_cast<std::size_t>(k)]));
    L.vertex_weights[k] = w1[static_cast<Eigen::Index>(*idx)] / (base * (i + 2));
  }
  const double pairs = 0.5 * (i + 3) * (i + 2);
  L.adjacency = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : raw) {
    LinkView::Edge edge{pos(e.x), pos(e.y), e.mass / (base * pairs)};
    L.adjacency(static_cast<Eigen::Index>(edge.a), static_cast<Eigen::Index>(edge.b)) += edge.weight;
    L.adjacency(static_cast<Eigen::Index>(edge.b), static_cast<Eigen::Index>(edge.a)) += edge.weight;
    L.edges.push_back(edge);
  }
  std::sort(L.edges.begin(), L.edges.end(),
            [](const auto& a, const auto& b) { return std::pair(a.a, a.b) < std::pair(b.a, b.b); });
  for (Eigen::Index r = 0; r < m; ++r) {
    const double sum = L.adjacency.row(r).sum();
    if (sum > 0.0) L.adjacency.row(r) /= sum;
  }
  return L;
}

void require_link_face(const WeightedComplex& X, const Face& s) {
  if (!X.index_of(s)) throw ValidationError("face " + s.to_string() + " is not in the complex");
  if (s.dimension() > X.dimension() - 2) {
    throw ValidationError("links are taken for faces of dimension at most d - 2 = " +
                          std::to_string(X.dimension() - 2) + "; got " + s.to_string());
  }
}

}  // namespace

LinkView link(const WeightedComplex& X, const Face& s) {
  require_link_face(X, s);
  const int i = s.dimension();
  const auto& upper = X.faces(i + 2);
  const Eigen::VectorXd& w2 = X.weights(i + 2);
  std::vector<RawEdge> raw;
  for (std::size_t r = 0; r < upper.size(); ++r) {
    if (!s.is_subset_of(upper[r])) continue;
    const Face rest = upper[r].minus(s);
    raw.push_back({rest[0], rest[1], w2[static_cast<Eigen::Index>(r)]});
  }
  return assemble_link(X, s, raw);
}

double lambda_link(const LinkView& L) {
  const auto m = static_cast<Eigen::Index>(L.vertices.size());
  if (m < 2) {
    throw UndefinedSpectrumError("link of " + L.base.to_string() + " has " + std::to_string(m) +
                                 " vertices; its spectrum is undefined");
  }
  const Eigen::ArrayXd s = L.vertex_weights.array().sqrt();
  const Eigen::MatrixXd S = s.matrix().asDiagonal() * L.adjacency * s.inverse().matrix().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("link eigensolve failed");
  const auto& ev = es.eigenvalues();  // ascending; ev[m-1] is the trivial eigenvalue 1
  return std::max(std::abs(ev[m - 2]), std::abs(ev[0]));
}

LevelGamma gamma_hdx(const WeightedComplex& X, const NormOptions& options) {
  const int d = X.dimension();
  if (d < 1) throw InvalidParametersError("gamma_hdx needs dimension at least 1");
  LevelGamma out;
  for (int j = 0; j < d; ++j) {
    const LevelOperator diff =
        combine(1.0, nonlazy_upper_walk(X, j), -1.0, lower_walk(X, j));
    NormResult r = weighted_operator_norm(diff, X, options);
    out.per_level.push_back(r.value);
    out.gamma = std::max(out.gamma, r.value);
    out.norms.push_back(std::move(r));
  }
  return out;
}

LinkGamma gamma_link(const WeightedComplex& X, const LinkScanOptions& options) {
  const int d = X.dimension();
  if (d < 1) throw InvalidParametersError("gamma_link needs dimension at least 1");
  LinkGamma out;
  std::vector<Face> bases;
  for (int i = -1; i <= d - 2; ++i) {
    for (const Face& s : X.faces(i)) {
      if (options.max_links != 0 && bases.size() == options.max_links) {
        out.truncated = true;
        break;
      }
      bases.push_back(s);
    }
    if (out.truncated) break;
  }

  // Edges of every scanned link, gathered in one pass per level.
  std::vector<std::vector<RawEdge>> raw(bases.size());
  {
    std::size_t offset = 0;
    for (int i = -1; i <= d - 2 && offset < bases.size(); ++i) {
      const std::size_t count = std::min(X.size(i), bases.size() - offset);
      const auto& upper = X.faces(i + 2);
      const Eigen::VectorXd& w2 = X.weights(i + 2);
      for (std::size_t r = 0; r < upper.size(); ++r) {
        const Face& f = upper[r];
        for (std::size_t a = 0; a < f.size(); ++a) {
          for (std::size_t b = a + 1; b < f.size(); ++b) {
            const Face s = f.without_index(b).without_index(a);
            const std::size_t idx = *X.index_of(s);
            if (idx >= count) continue;
            raw[offset + idx].push_back({f[a], f[b], w2[static_cast<Eigen::Index>(r)]});
          }
        }
      }
      offset += count;
    }
  }

  std::vector<double> lambdas(bases.size(), 0.0);
  std::vector<std::size_t> counts(bases.size(), 0);
  parallel_for(bases.size(), options.jobs, [&](std::size_t k) {
    const LinkView L = assemble_link(X, bases[k], raw[k]);
    counts[k] = L.vertices.size();
    if (counts[k] >= 2) lambdas[k] = lambda_link(L);
  });

  bool any = false;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (counts[k] < 2) {
      out.skipped.push_back(bases[k]);
      continue;
    }
    out.per_link.push_back({bases[k], lambdas[k], counts[k]});
    if (!any || lambdas[k] > out.gamma) {
      out.gamma = lambdas[k];
      any = true;
    }
  }
  bool have_worst = false;
  for (const auto& e : out.per_link) {
    if (e.lambda >= out.gamma - 1e-12 && (!have_worst || e.face < out.worst)) {
      out.worst = e.face;
      have_worst = true;
    }
  }
  return out;
}

EquivalenceReport check_equivalence(const LevelGamma& hdx, const LinkGamma& links,
                                    int dimension, double tol) {
  EquivalenceReport r;
  r.gamma_hdx = hdx.gamma;
  r.gamma_link = links.gamma;
  r.upper_bound = 3.0 * dimension * hdx.gamma;
  r.tol = tol;
  r.hdx_le_link = r.gamma_hdx <= r.gamma_link + tol;
  r.link_le_bound = r.gamma_link <= r.upper_bound + tol;
  return r;
}

EquivalenceReport check_equivalence(const WeightedComplex& X, double tol,
                                    const LinkScanOptions& options) {
  return check_equivalence(gamma_hdx(X), gamma_link(X, options), X.dimension(), tol);
}

ProperReport check_proper(const GradedPoset& X, double threshold, std::optional<int> max_level) {
  const int top = max_level.value_or(X.dimension());
  if (top > X.dimension()) {
    throw InvalidParametersError("properness level exceeds the dimension");
  }
  ProperReport r;
  for (int i = -1; i <= top - 1; ++i) {
    const LevelOperator du = compose(down_operator(X, i + 1), up_operator(X, i));
    ExtremeEigenpair e = weighted_min_eigenpair(du, X);
    r.min_eigenvalue.push_back(e.value);
    if (e.value <= threshold && r.proper) {
      r.proper = false;
      r.witness_level = i;
      r.witness = std::move(e.function);
    }
  }
  return r;
}

std::pair<double, double> localization_sides(const WeightedComplex& X, int level,
                                             const LevelFunction& f) {
  if (level < 0 || level > X.dimension() - 1 || f.level != level) {
    throw InvalidParametersError("localization needs 0 <= level <= d - 1");
  }
  const LevelOperator M = nonlazy_upper_walk(X, level);
  const double lhs = inner_product(M.apply(f), f, X);
  double rhs = 0.0;
  const Eigen::VectorXd& wb = X.weights(level - 1);
  for (std::size_t k = 0; k < X.size(level - 1); ++k) {
    const Face& s = X.face(level - 1, k);
    const LinkView L = link(X, s);
    Eigen::VectorXd fs(static_cast<Eigen::Index>(L.vertices.size()));
    for (std::size_t v = 0; v < L.vertices.size(); ++v) {
      fs[static_cast<Eigen::Index>(v)] =
          f.values[static_cast<Eigen::Index>(*X.index_of(s.with_vertex(L.vertices[v])))];
    }
    const Eigen::VectorXd Afs = L.adjacency * fs;
    rhs += wb[static_cast<Eigen::Index>(k)] *
           (L.vertex_weights.array() * Afs.array() * fs.array()).sum();
  }
  return {lhs, rhs};
}

ExpansionReport analyze(const WeightedComplex& X, const NormOptions& norm,
                        const LinkScanOptions& scan, double tol) {
  ExpansionReport r;
  r.dimension = X.dimension();
  r.hdx = gamma_hdx(X, norm);
  r.links = gamma_link(X, scan);
  r.equivalence = check_equivalence(r.hdx, r.links, X.dimension(), tol);
  r.proper = check_proper(X);
  for (int j = 0; j < X.dimension(); ++j) {
    r.laziness_table.push_back({j, laziness(upper_walk(X, j), X), laziness(lower_walk(X, j), X),
                                laziness(nonlazy_upper_walk(X, j), X)});
  }
  return r;
}

}  // namespace hdx
