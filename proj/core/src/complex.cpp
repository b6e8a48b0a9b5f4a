#include "hdx/complex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>

#include "hdx/errors.hpp"

namespace hdx {

std::size_t max_faces_guard() {
  if (const char* env = std::getenv("HDXLAB_MAX_FACES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxFaces;
}

WeightedComplex WeightedComplex::from_top_faces(std::vector<Face> top_faces,
                                                std::vector<double> weights) {
  if (top_faces.empty()) throw ValidationError("a complex needs at least one top face");
  if (top_faces.size() != weights.size()) {
    throw DimensionMismatchError("got " + std::to_string(top_faces.size()) + " faces but " +
                                 std::to_string(weights.size()) + " weights");
  }
  const std::size_t top_size = top_faces.front().size();
  if (top_size == 0) throw ValidationError("top faces must be non-empty");
  for (std::size_t i = 0; i < top_faces.size(); ++i) {
    if (top_faces[i].size() != top_size) {
      throw DimensionMismatchError("face " + top_faces[i].to_string() + " has dimension " +
                                   std::to_string(top_faces[i].dimension()) + ", expected " +
                                   std::to_string(static_cast<int>(top_size) - 1));
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw ValidationError("face " + top_faces[i].to_string() +
                            " has non-positive weight " + std::to_string(weights[i]));
    }
  }
  if (top_faces.size() > max_faces_guard()) {
    throw ResourceLimitError(std::to_string(top_faces.size()) +
                             " top faces exceed the guard of " +
                             std::to_string(max_faces_guard()));
  }

  std::vector<std::size_t> order(top_faces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return top_faces[a] < top_faces[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (top_faces[order[i]] == top_faces[order[i - 1]]) {
      throw ValidationError("duplicate top face " + top_faces[order[i]].to_string());
    }
  }

  const int d = static_cast<int>(top_size) - 1;
  WeightedComplex X;
  X.dimension_ = d;
  X.levels_.resize(static_cast<std::size_t>(d + 2));
  Eigen::VectorXd top_w(static_cast<Eigen::Index>(order.size()));
  {
    auto& top = X.levels_[static_cast<std::size_t>(d + 1)];
    top.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      top.push_back(std::move(top_faces[order[i]]));
      top_w[static_cast<Eigen::Index>(i)] = weights[order[i]];
    }
  }
  for (int i = d - 1; i >= -1; --i) {
    const auto& upper = X.levels_[static_cast<std::size_t>(i + 2)];
    std::vector<Face> lower;
    lower.reserve(upper.size() * static_cast<std::size_t>(i + 2));
    for (const Face& s : upper) {
      for (std::size_t p = 0; p < s.size(); ++p) lower.push_back(s.without_index(p));
    }
    std::sort(lower.begin(), lower.end());
    lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    X.levels_[static_cast<std::size_t>(i + 1)] = std::move(lower);
  }

  std::size_t total = 0;
  for (const auto& lvl : X.levels_) total += lvl.size();
  X.index_.reserve(total);
  for (const auto& lvl : X.levels_) {
    for (std::size_t j = 0; j < lvl.size(); ++j) X.index_.emplace(lvl[j], j);
  }

  std::vector<PosetLevel> pl(X.levels_.size());
  for (int i = -1; i <= d; ++i) {
    const auto& faces = X.levels_[static_cast<std::size_t>(i + 1)];
    PosetLevel& L = pl[static_cast<std::size_t>(i + 1)];
    L.labels.reserve(faces.size());
    for (const Face& f : faces) L.labels.push_back(f.to_string());
    if (i >= 0) {
      const auto& below = X.levels_[static_cast<std::size_t>(i)];
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(faces.size() * faces.front().size());
      const double p = 1.0 / static_cast<double>(i + 1);
      for (std::size_t r = 0; r < faces.size(); ++r) {
        for (std::size_t q = 0; q < faces[r].size(); ++q) {
          const std::size_t c = X.index_.at(faces[r].without_index(q));
          trips.emplace_back(static_cast<int>(r), static_cast<int>(c), p);
        }
      }
      L.down.resize(static_cast<Eigen::Index>(faces.size()),
                    static_cast<Eigen::Index>(below.size()));
      L.down.setFromTriplets(trips.begin(), trips.end());
    }
  }
  pl.back().weights = top_w;
  X.poset_ = GradedPoset::from_levels(std::move(pl));
  return X;
}

const std::vector<Face>& WeightedComplex::faces(int level) const {
  if (level < -1 || level > dimension_) {
    throw InvalidParametersError("level " + std::to_string(level) + " is outside -1.." +
                                 std::to_string(dimension_));
  }
  return levels_[static_cast<std::size_t>(level + 1)];
}

std::optional<std::size_t> WeightedComplex::index_of(const Face& f) const {
  if (f.dimension() > dimension_) return std::nullopt;
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Vertex> WeightedComplex::vertices() const {
  std::vector<Vertex> out;
  out.reserve(size(0));
  for (const Face& f : faces(0)) out.push_back(f[0]);
  return out;
}

WeightedComplex complete_complex(int n, int d) {
  if (n < 1 || d < 0 || d + 1 > n) {
    throw InvalidParametersError("complete complex needs 0 <= d and d + 1 <= n (got n=" +
                                 std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  double count = 1.0;
  for (int j = 0; j <= d; ++j) count = count * (n - j) / (j + 1);
  if (count > static_cast<double>(max_faces_guard())) {
    throw ResourceLimitError("complete complex would have about " +
                             std::to_string(static_cast<long long>(count)) +
                             " top faces, above the guard of " +
                             std::to_string(max_faces_guard()));
  }
  std::vector<Vertex> ground(static_cast<std::size_t>(n));
  std::iota(ground.begin(), ground.end(), Vertex{0});
  auto faces = subsets_of_size(ground, static_cast<std::size_t>(d + 1));
  std::vector<double> w(faces.size(), 1.0);
  return WeightedComplex::from_top_faces(std::move(faces), std::move(w));
}

bool complete_complex_is_proper(int n, int k) noexcept { return 2 * (k + 1) <= n + 1; }

LevelFunction y_function(const WeightedComplex& X, const Face& s, int target_level) {
  if (!X.index_of(s)) throw ValidationError("face " + s.to_string() + " is not in the complex");
  if (target_level < s.dimension() || target_level > X.dimension()) {
    throw InvalidParametersError("target level " + std::to_string(target_level) +
                                 " must lie between dim(s) and the dimension");
  }
  const auto& faces = X.faces(target_level);
  LevelFunction f(target_level, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(faces.size())));
  for (std::size_t j = 0; j < faces.size(); ++j) {
    if (s.is_subset_of(faces[j])) f.values[static_cast<Eigen::Index>(j)] = 1.0;
  }
  return f;
}

std::vector<std::vector<Vertex>> skeleton_components(const WeightedComplex& X) {
  const std::size_t n = X.size(0);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  if (X.dimension() >= 1) {
    for (const Face& e : X.faces(1)) {
      const std::size_t a = find(*X.index_of(Face{e[0]}));
      const std::size_t b = find(*X.index_of(Face{e[1]}));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<Vertex>> groups;
  const auto verts = X.vertices();
  for (std::size_t v = 0; v < n; ++v) groups[find(v)].push_back(verts[v]);
  std::vector<std::vector<Vertex>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  return out;
}

}  // namespace hdx
