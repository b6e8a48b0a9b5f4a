#include "hdx/face.hpp"

#include <algorithm>
#include <functional>

#include "hdx/errors.hpp"

namespace hdx {

Face::Face(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i - 1] >= vertices_[i]) {
      throw ValidationError("face vertices must be strictly increasing: " + to_string());
    }
  }
}

Face::Face(std::initializer_list<Vertex> vertices) : Face(std::vector<Vertex>(vertices)) {}

Face Face::from_unsorted(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw ValidationError("face has a repeated vertex");
  }
  return Face(std::move(vertices));
}

bool Face::contains(Vertex v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Face::is_subset_of(const Face& other) const noexcept {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

Face Face::without_index(std::size_t pos) const {
  Face out;
  out.vertices_.reserve(vertices_.size() - 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i != pos) out.vertices_.push_back(vertices_[i]);
  }
  return out;
}

Face Face::with_vertex(Vertex v) const {
  Face out;
  out.vertices_ = vertices_;
  auto it = std::lower_bound(out.vertices_.begin(), out.vertices_.end(), v);
  if (it != out.vertices_.end() && *it == v) return out;
  out.vertices_.insert(it, v);
  return out;
}

Face Face::union_with(const Face& other) const {
  Face out;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                 other.vertices_.end(), std::back_inserter(out.vertices_));
  return out;
}

Face Face::minus(const Face& other) const {
  Face out;
  std::set_difference(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                      other.vertices_.end(), std::back_inserter(out.vertices_));
  return out;
}

std::string Face::to_string() const {
  if (vertices_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(vertices_[i]);
  }
  return s;
}

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ f.size();
  for (Vertex v : f.vertices()) {
    h ^= std::hash<Vertex>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Face> subsets_of_size(std::span<const Vertex> ground, std::size_t k) {
  std::vector<Face> out;
  const std::size_t n = ground.size();
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Vertex> vs(k);
    for (std::size_t i = 0; i < k; ++i) vs[i] = ground[idx[i]];
    out.emplace_back(std::move(vs));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace hdx
