#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hdx {

using Vertex = std::uint32_t;

/// A face of a simplicial complex: a strictly increasing list of vertex ids.
/// The default-constructed face is the empty face, of dimension -1.
class Face {
 public:
  Face() = default;
  /// Throws ValidationError unless `vertices` is strictly increasing.
  explicit Face(std::vector<Vertex> vertices);
  Face(std::initializer_list<Vertex> vertices);

  /// Sorts the input; rejects duplicate vertices.
  static Face from_unsorted(std::vector<Vertex> vertices);

  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  bool contains(Vertex v) const noexcept;
  bool is_subset_of(const Face& other) const noexcept;

  /// The face with the vertex at position `pos` removed.
  Face without_index(std::size_t pos) const;
  Face with_vertex(Vertex v) const;
  Face union_with(const Face& other) const;
  Face minus(const Face& other) const;

  /// Space-separated vertex ids; the empty face renders as "{}".
  std::string to_string() const;

  auto operator<=>(const Face&) const = default;
  bool operator==(const Face&) const = default;

 private:
  std::vector<Vertex> vertices_;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

/// All k-element subsets of `ground` (itself sorted), in lexicographic order.
std::vector<Face> subsets_of_size(std::span<const Vertex> ground, std::size_t k);

}  // namespace hdx
