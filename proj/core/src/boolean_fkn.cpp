#include "hdx/boolean_fkn.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include <Eigen/QR>

#include "hdx/errors.hpp"
#include "hdx/expansion.hpp"
#include "hdx/parallel.hpp"

namespace hdx {

double label_value(DictatorLabel label, int k) noexcept {
  const double a = 1.0 / (k + 1);
  switch (label) {
    case DictatorLabel::zero: return 0.0;
    case DictatorLabel::one: return 1.0;
    case DictatorLabel::alpha: return a;
    case DictatorLabel::alpha_minus_one: return a - 1.0;
  }
  return 0.0;
}

const char* label_name(DictatorLabel label) noexcept {
  switch (label) {
    case DictatorLabel::zero: return "0";
    case DictatorLabel::one: return "1";
    case DictatorLabel::alpha: return "alpha";
    case DictatorLabel::alpha_minus_one: return "alpha-1";
  }
  return "?";
}

double DegreeOneForm::coefficient(Vertex v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return 0.0;
  return label_value(labels[static_cast<std::size_t>(it - vertices.begin())], k);
}

double DegreeOneForm::evaluate(const Face& face) const {
  double s = 0.0;
  for (Vertex v : face.vertices()) s += coefficient(v);
  return s;
}

LevelFunction DegreeOneForm::to_function(const WeightedComplex& X) const {
  LevelFunction f(k, Eigen::VectorXd(static_cast<Eigen::Index>(X.size(k))));
  for (std::size_t j = 0; j < X.size(k); ++j) {
    f.values[static_cast<Eigen::Index>(j)] = evaluate(X.face(k, j));
  }
  return f;
}

namespace {

bool is_boolean(const Eigen::VectorXd& v) {
  return ((v.array() == 0.0) || (v.array() == 1.0)).all();
}

std::vector<Vertex> sorted_set(const IndependentSet& I) {
  std::vector<Vertex> s(I);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool meets(const Face& f, const std::vector<Vertex>& sorted) {
  for (Vertex v : f.vertices()) {
    if (std::binary_search(sorted.begin(), sorted.end(), v)) return true;
  }
  return false;
}

}  // namespace

bool is_independent(const WeightedComplex& X, const IndependentSet& I) {
  const auto s = sorted_set(I);
  if (X.dimension() < 1) return true;
  for (const Face& e : X.faces(1)) {
    if (std::binary_search(s.begin(), s.end(), e[0]) &&
        std::binary_search(s.begin(), s.end(), e[1])) {
      return false;
    }
  }
  return true;
}

LevelFunction independent_set_indicator(const WeightedComplex& X, const IndependentSet& I,
                                        bool complemented, int level) {
  const int l = level == -2 ? X.dimension() : level;
  if (l < 0 || l > X.dimension()) throw InvalidParametersError("indicator level out of range");
  const auto s = sorted_set(I);
  for (Vertex v : s) {
    if (!X.index_of(Face{v})) {
      throw ValidationError("vertex " + std::to_string(v) + " is not in the complex");
    }
  }
  if (!is_independent(X, s)) throw ValidationError("the vertex set is not independent");
  LevelFunction f(l, Eigen::VectorXd(static_cast<Eigen::Index>(X.size(l))));
  for (std::size_t j = 0; j < X.size(l); ++j) {
    const bool hit = meets(X.face(l, j), s);
    f.values[static_cast<Eigen::Index>(j)] = (hit != complemented) ? 1.0 : 0.0;
  }
  return f;
}

DegreeOneEnumeration enumerate_boolean_degree_one(const WeightedComplex& X) {
  const int d = X.dimension();
  if (d < 2) throw InvalidParametersError("the degree-1 classification needs dimension >= 2");
  DegreeOneEnumeration out;
  const auto comps = skeleton_components(X);
  out.components = comps.size();
  out.proper = check_proper(X).proper;
  if (!out.proper) {
    out.notices.push_back("complex is not proper; degree is not uniquely defined");
  }
  if (comps.size() > 1) {
    out.notices.push_back("1-skeleton has " + std::to_string(comps.size()) +
                          " components; enumerating per component");
  }

  // Adjacency per vertex index.
  const auto verts = X.vertices();
  auto vpos = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) -
                                    verts.begin());
  };
  std::vector<std::vector<bool>> adj(verts.size(), std::vector<bool>(verts.size(), false));
  for (const Face& e : X.faces(1)) {
    adj[vpos(e[0])][vpos(e[1])] = adj[vpos(e[1])][vpos(e[0])] = true;
  }

  std::vector<std::vector<IndependentSet>> per_comp;
  double total = 1.0;
  for (const auto& C : comps) {
    std::vector<IndependentSet> sets;
    IndependentSet current;
    // Backtracking in vertex order yields sets in lexicographic order.
    auto rec = [&](auto&& self, std::size_t from) -> void {
      sets.push_back(current);
      if (sets.size() > max_faces_guard()) {
        throw ResourceLimitError("too many independent sets to enumerate");
      }
      for (std::size_t i = from; i < C.size(); ++i) {
        bool ok = true;
        for (Vertex u : current) ok = ok && !adj[vpos(u)][vpos(C[i])];
        if (!ok) continue;
        current.push_back(C[i]);
        self(self, i + 1);
        current.pop_back();
      }
    };
    rec(rec, 0);
    total *= 2.0 * static_cast<double>(sets.size());
    per_comp.push_back(std::move(sets));
  }
  if (total > static_cast<double>(max_faces_guard())) {
    throw ResourceLimitError("too many Boolean degree-1 functions to enumerate");
  }

  // Component of each top face.
  const auto& top = X.faces(d);
  std::vector<std::size_t> comp_of_vertex(verts.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (Vertex v : comps[c]) comp_of_vertex[vpos(v)] = c;
  }
  std::vector<std::size_t> comp_of_face(top.size());
  for (std::size_t j = 0; j < top.size(); ++j) comp_of_face[j] = comp_of_vertex[vpos(top[j][0])];

  std::set<std::vector<char>> seen;
  std::vector<std::size_t> choice(comps.size(), 0);  // 2 * set index + flag
  while (true) {
    BooleanDegreeOne b;
    b.function = LevelFunction(d, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(top.size())));
    std::vector<std::vector<Vertex>> sorted;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      b.sets.push_back(per_comp[c][choice[c] / 2]);
      b.complemented.push_back(choice[c] % 2 == 1);
      sorted.push_back(sorted_set(b.sets.back()));
    }
    std::vector<char> key(top.size());
    for (std::size_t j = 0; j < top.size(); ++j) {
      const std::size_t c = comp_of_face[j];
      const bool v = meets(top[j], sorted[c]) != b.complemented[c];
      key[j] = v ? 1 : 0;
      b.function.values[static_cast<Eigen::Index>(j)] = v ? 1.0 : 0.0;
    }
    if (seen.insert(key).second) out.functions.push_back(std::move(b));
    std::size_t c = 0;
    while (c < comps.size()) {
      if (++choice[c] < 2 * per_comp[c].size()) break;
      choice[c] = 0;
      ++c;
    }
    if (c == comps.size()) break;
  }
  return out;
}

std::vector<std::uint64_t> brute_force_boolean_degree_one(const WeightedComplex& X, double tol) {
  const int d = X.dimension();
  const auto n = static_cast<Eigen::Index>(X.size(d));
  if (n > 24) {
    throw ResourceLimitError("brute force over 2^" + std::to_string(n) +
                             " functions exceeds the guard of 2^24");
  }
  const Eigen::VectorXd w = X.weights(d);
  const Eigen::VectorXd sw = w.array().sqrt().matrix();
  Eigen::MatrixXd Y(n, static_cast<Eigen::Index>(X.size(0)));
  for (std::size_t v = 0; v < X.size(0); ++v) {
    Y.col(static_cast<Eigen::Index>(v)) = sw.cwiseProduct(y_function(X, X.face(0, v), d).values);
  }
  // Orthonormal basis of the weighted span through a rank-revealing QR.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Y);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXd Q = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
  // proj row j = (Q^T W)_{:,j}
  const Eigen::MatrixXd proj = Q.transpose() * sw.asDiagonal();

  auto residual_of = [&](std::uint64_t mask) {
    Eigen::VectorXd f(n);
    for (Eigen::Index j = 0; j < n; ++j) f[j] = (mask >> j) & 1u ? 1.0 : 0.0;
    const Eigen::VectorXd c = proj * f;
    return (w.array() * f.array()).sum() - c.squaredNorm();
  };

  std::vector<std::uint64_t> out;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(rank);
  double mass = 0.0;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 0; step < count; ++step) {
    if (step > 0) {
      const int bit = std::countr_zero(step);
      gray ^= std::uint64_t{1} << bit;
      const double sign = (gray >> bit) & 1u ? 1.0 : -1.0;
      c += sign * proj.col(bit);
      mass += sign * w[bit];
      if ((step & 0xfff) == 0) {
        Eigen::VectorXd f(n);
        for (Eigen::Index j = 0; j < n; ++j) f[j] = (gray >> j) & 1u ? 1.0 : 0.0;
        c = proj * f;
        mass = (w.array() * f.array()).sum();
      }
    }
    if (mass - c.squaredNorm() <= 100 * tol && residual_of(gray) <= tol) out.push_back(gray);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t boolean_mask(const LevelFunction& f) {
  if (f.size() > 64) throw ResourceLimitError("bitmask needs at most 64 entries");
  std::uint64_t m = 0;
  for (Eigen::Index j = 0; j < f.values.size(); ++j) {
    const double v = f.values[j];
    if (v != 0.0 && v != 1.0) throw ValidationError("function is not Boolean");
    if (v == 1.0) m |= std::uint64_t{1} << j;
  }
  return m;
}

double SliceFit::value_on(const Face& face) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::one: return 1.0;
    case Kind::dictator: return face.contains(vertex) ? 1.0 : 0.0;
    case Kind::anti_dictator: return face.contains(vertex) ? 0.0 : 1.0;
  }
  return 0.0;
}

std::string SliceFit::description() const {
  switch (kind) {
    case Kind::zero: return "0";
    case Kind::one: return "1";
    case Kind::dictator: return "y_" + std::to_string(vertex);
    case Kind::anti_dictator: return "1-y_" + std::to_string(vertex);
  }
  return "?";
}

SliceFit slice_fkn_search(std::span<const Vertex> ground, std::span<const Face> faces,
                          std::span<const double> values, std::span<const double> weights,
                          int k) {
  if (faces.size() != values.size() || faces.size() != weights.size()) {
    throw DimensionMismatchError("slice faces, values and weights differ in length");
  }
  double total = 0.0, ones = 0.0;
  for (std::size_t j = 0; j < faces.size(); ++j) {
    if (values[j] != 0.0 && values[j] != 1.0) {
      throw ValidationError("slice FKN needs a Boolean function");
    }
    total += weights[j];
    if (values[j] == 1.0) ones += weights[j];
  }
  if (!(total > 0.0)) throw ValidationError("slice has no mass");
  const double n = static_cast<double>(ground.size());
  SliceFit best;
  best.in_theorem_range = n / 4.0 <= k + 1 && k + 1 <= n / 2.0;
  best.kind = SliceFit::Kind::zero;
  best.distance = ones / total;
  auto consider = [&](SliceFit::Kind kind, Vertex v, double dist) {
    if (dist < best.distance - 1e-12) {
      best.kind = kind;
      best.vertex = v;
      best.distance = dist;
    }
  };
  consider(SliceFit::Kind::one, 0, (total - ones) / total);
  for (Vertex v : ground) {
    // Disagreement of y_v: faces with v valued 0 plus faces without v valued 1.
    double dis = 0.0;
    for (std::size_t j = 0; j < faces.size(); ++j) {
      const bool in = faces[j].contains(v);
      if (in != (values[j] == 1.0)) dis += weights[j];
    }
    consider(SliceFit::Kind::dictator, v, dis / total);
    consider(SliceFit::Kind::anti_dictator, v, (total - dis) / total);
  }
  return best;
}

SliceFit slice_fkn_oracle(const WeightedComplex& slice, const LevelFunction& F) {
  const int k = F.level;
  if (k < 0 || k > slice.dimension() || F.size() != slice.size(k)) {
    throw DimensionMismatchError("function does not live on a level of the slice");
  }
  const auto ground = slice.vertices();
  const auto& faces = slice.faces(k);
  const Eigen::VectorXd& w = slice.weights(k);
  return slice_fkn_search(ground, faces, std::span<const double>(F.values.data(), F.size()),
                          std::span<const double>(w.data(), static_cast<std::size_t>(w.size())), k);
}

std::vector<DictatorLabel> slice_labels(const SliceFit& fit, std::span<const Vertex> ground,
                                        int /*k*/) {
  std::vector<DictatorLabel> out(ground.size());
  for (std::size_t i = 0; i < ground.size(); ++i) {
    const bool self = ground[i] == fit.vertex;
    switch (fit.kind) {
      case SliceFit::Kind::zero: out[i] = DictatorLabel::zero; break;
      case SliceFit::Kind::one: out[i] = DictatorLabel::alpha; break;
      case SliceFit::Kind::dictator:
        out[i] = self ? DictatorLabel::one : DictatorLabel::zero;
        break;
      case SliceFit::Kind::anti_dictator:
        out[i] = self ? DictatorLabel::alpha_minus_one : DictatorLabel::alpha;
        break;
    }
  }
  return out;
}

LevelFunction best_degree_one_approximation(const WeightedComplex& X, const LevelFunction& F) {
  const int k = F.level;
  if (k < 0 || k > X.dimension() || F.size() != X.size(k)) {
    throw DimensionMismatchError("function does not live on a level of the complex");
  }
  const auto n = static_cast<Eigen::Index>(X.size(k));
  const auto m = static_cast<Eigen::Index>(X.size(0));
  const Eigen::VectorXd sw = X.weights(k).array().sqrt().matrix();
  Eigen::MatrixXd Y(n, m);
  for (Eigen::Index v = 0; v < m; ++v) {
    Y.col(v) = y_function(X, X.face(0, static_cast<std::size_t>(v)), k).values;
  }
  const Eigen::VectorXd a =
      (sw.asDiagonal() * Y).completeOrthogonalDecomposition().solve(sw.cwiseProduct(F.values));
  return {k, Y * a};
}

namespace {

// Fit one local slice: faces are the (k+1)-subsets of `face`.
LocalFit fit_local(const WeightedComplex& X, const Face& face, int k, const Eigen::VectorXd& F,
                   const Eigen::VectorXd& f) {
  LocalFit L;
  L.face = face;
  const auto subs = subsets_of_size(face.vertices(), static_cast<std::size_t>(k + 1));
  std::vector<double> vals(subs.size()), wts(subs.size(), 1.0);
  double err = 0.0;
  for (std::size_t j = 0; j < subs.size(); ++j) {
    const auto idx = static_cast<Eigen::Index>(*X.index_of(subs[j]));
    vals[j] = F[idx];
    err += (f[idx] - F[idx]) * (f[idx] - F[idx]);
  }
  L.error = err / static_cast<double>(subs.size());
  L.fit = slice_fkn_search(face.vertices(), subs, vals, wts, k);
  L.labels = slice_labels(L.fit, face.vertices(), k);
  return L;
}

bool labels_agree(const LocalFit& a, const LocalFit& b) {
  // Compare on the intersection of the two faces.
  std::size_t i = 0, j = 0;
  const auto va = a.face.vertices();
  const auto vb = b.face.vertices();
  while (i < va.size() && j < vb.size()) {
    if (va[i] < vb[j]) {
      ++i;
    } else if (vb[j] < va[i]) {
      ++j;
    } else {
      if (a.labels[i] != b.labels[j]) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

}  // namespace

FknResult fkn_recover(const WeightedComplex& X, const LevelFunction& F, const FknOptions& options) {
  const int k = F.level;
  const int d = X.dimension();
  if (k < 1) throw StructuralError("FKN recovery needs k >= 1");
  if (d < 4 * k) {
    throw StructuralError("FKN recovery needs faces of dimension 4k = " + std::to_string(4 * k) +
                          " but the complex has dimension " + std::to_string(d));
  }
  if (F.size() != X.size(k)) throw DimensionMismatchError("function length does not match X(k)");
  if (!is_boolean(F.values)) throw ValidationError("FKN recovery needs a Boolean function");

  FknResult res;
  res.k = k;
  res.hypothesis_4k2_lt_d = 4 * k * k < d;
  res.best_degree_one = best_degree_one_approximation(X, F);
  const Eigen::VectorXd& f = res.best_degree_one.values;
  const Eigen::VectorXd& wk = X.weights(k);
  res.epsilon = (wk.array() * (F.values - f).array().square()).sum();

  const auto& T = X.faces(2 * k);
  const auto& U = X.faces(4 * k);
  res.local_t.resize(T.size());
  res.local_u.resize(U.size());
  parallel_for(T.size(), options.jobs,
               [&](std::size_t j) { res.local_t[j] = fit_local(X, T[j], k, F.values, f); });
  parallel_for(U.size(), options.jobs,
               [&](std::size_t j) { res.local_u[j] = fit_local(X, U[j], k, F.values, f); });

  const Eigen::VectorXd& wt = X.weights(2 * k);
  const Eigen::VectorXd& wu = X.weights(4 * k);
  for (std::size_t j = 0; j < T.size(); ++j) res.mean_epsilon_t += wt[static_cast<Eigen::Index>(j)] * res.local_t[j].error;
  for (std::size_t j = 0; j < U.size(); ++j) res.mean_delta_u += wu[static_cast<Eigen::Index>(j)] * res.local_u[j].error;

  // Pi_{2k}-weighted plurality per vertex.
  const auto verts = X.vertices();
  auto vpos = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) -
                                    verts.begin());
  };
  std::vector<std::array<double, 4>> votes(verts.size(), {0.0, 0.0, 0.0, 0.0});
  for (std::size_t j = 0; j < T.size(); ++j) {
    const auto vs = T[j].vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      votes[vpos(vs[i])][static_cast<std::size_t>(res.local_t[j].labels[i])] +=
          wt[static_cast<Eigen::Index>(j)];
    }
  }
  res.g.k = k;
  res.g.vertices = verts;
  res.g.labels.assign(verts.size(), DictatorLabel::zero);
  std::vector<std::vector<DictatorLabel>> tied(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const double top = *std::max_element(votes[v].begin(), votes[v].end());
    for (std::size_t l = 0; l < 4; ++l) {
      if (votes[v][l] >= top - 1e-12 * std::max(1.0, top)) {
        tied[v].push_back(static_cast<DictatorLabel>(l));
      }
    }
    res.g.labels[v] = tied[v].front();
  }
  auto disagreement = [&](const DegreeOneForm& g) {
    double p = 0.0;
    for (std::size_t j = 0; j < X.size(k); ++j) {
      if (std::abs(g.evaluate(X.face(k, j)) - F.values[static_cast<Eigen::Index>(j)]) > options.tol) {
        p += wk[static_cast<Eigen::Index>(j)];
      }
    }
    return p;
  };
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (tied[v].size() < 2) continue;
    DictatorLabel best_label = tied[v].front();
    double best = 2.0;
    for (DictatorLabel l : tied[v]) {
      res.g.labels[v] = l;
      const double p = disagreement(res.g);
      if (p < best - 1e-15) {
        best = p;
        best_label = l;
      }
    }
    res.g.labels[v] = best_label;
  }

  res.pr_disagree = disagreement(res.g);
  for (std::size_t j = 0; j < X.size(k); ++j) {
    const double gv = res.g.evaluate(X.face(k, j));
    if (std::abs(gv) <= options.tol || std::abs(gv - 1.0) <= options.tol) {
      res.pr_boolean += wk[static_cast<Eigen::Index>(j)];
    }
  }
  for (std::size_t j = 0; j < T.size(); ++j) {
    const auto vs = T[j].vertices();
    bool same = true;
    for (std::size_t i = 0; i < vs.size() && same; ++i) {
      same = res.g.labels[vpos(vs[i])] == res.local_t[j].labels[i];
    }
    if (same) res.local_consistency += wt[static_cast<Eigen::Index>(j)];
  }

  // Agreement over (t1, t2) ~ D_{2k,4k}, enumerated exactly.
  std::vector<double> agree(U.size(), 0.0);
  parallel_for(U.size(), options.jobs, [&](std::size_t j) {
    const auto subs = subsets_of_size(U[j].vertices(), static_cast<std::size_t>(2 * k + 1));
    std::vector<const LocalFit*> fits;
    for (const Face& t : subs) fits.push_back(&res.local_t[*X.index_of(t)]);
    std::size_t ok = 0;
    for (const auto* a : fits) {
      for (const auto* b : fits) ok += labels_agree(*a, *b) ? 1 : 0;
    }
    agree[j] = static_cast<double>(ok) / static_cast<double>(fits.size() * fits.size());
  });
  for (std::size_t j = 0; j < U.size(); ++j) res.agreement_rate += wu[static_cast<Eigen::Index>(j)] * agree[j];
  return res;
}

NoisyInstance flip_noise(const WeightedComplex& X, const LevelFunction& F, double eps,
                         std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidParametersError("noise rate must lie in [0, 1]");
  if (!is_boolean(F.values)) throw ValidationError("noise is applied to Boolean functions");
  if (F.size() != X.size(F.level)) throw DimensionMismatchError("function length mismatch");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NoisyInstance out{F, 0.0, 0};
  const Eigen::VectorXd& w = X.weights(F.level);
  for (Eigen::Index j = 0; j < F.values.size(); ++j) {
    if (u(rng) < eps) {
      out.noisy.values[j] = 1.0 - out.noisy.values[j];
      out.flipped_mass += w[j];
      ++out.flipped;
    }
  }
  return out;
}

}  // namespace hdx
