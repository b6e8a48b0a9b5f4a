#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hdx/face.hpp"
#include "hdx/poset.hpp"

namespace hdx {

/// Default cap on |X(d)|; overridden by the HDXLAB_MAX_FACES environment variable.
inline constexpr std::size_t kDefaultMaxFaces = 1'000'000;
std::size_t max_faces_guard();

/// Pure weighted simplicial complex.
///
/// Faces are stored per level in lexicographic order and every vector or
/// matrix in the library uses those indices. Pi_d is the normalized top
/// measure; Pi_i(t) = sum_{s > t} Pi_{i+1}(s) / (i + 2) for i < d.
class WeightedComplex {
 public:
  /// Builds the downward closure of `top_faces`, normalizing `weights`.
  /// Throws DimensionMismatchError on mixed face sizes and ValidationError
  /// on non-positive weights or duplicate top faces.
  static WeightedComplex from_top_faces(std::vector<Face> top_faces,
                                        std::vector<double> weights);

  int dimension() const noexcept { return dimension_; }
  std::size_t size(int level) const { return faces(level).size(); }
  const std::vector<Face>& faces(int level) const;
  const Face& face(int level, std::size_t index) const { return faces(level).at(index); }
  std::optional<std::size_t> index_of(const Face& f) const;
  const Eigen::VectorXd& weights(int level) const { return poset_.weights(level); }

  /// Vertex ids of X(0), in index order.
  std::vector<Vertex> vertices() const;

  /// The same complex viewed as a measured poset (containment order,
  /// uniform deletion of one vertex as the downward step).
  const GradedPoset& poset() const noexcept { return poset_; }
  operator const GradedPoset&() const noexcept { return poset_; }

 private:
  int dimension_ = -1;
  std::vector<std::vector<Face>> levels_;  // levels_[i + 1] = X(i)
  std::unordered_map<Face, std::size_t, FaceHash> index_;
  GradedPoset poset_;
};

/// All (d+1)-subsets of {0..n-1} with uniform top weights.
WeightedComplex complete_complex(int n, int d);

/// Complete complex properness boundary: k + 1 <= (n + 1) / 2.
bool complete_complex_is_proper(int n, int k) noexcept;

/// y_s on X(target_level): 1 on faces containing s. Throws if s is not a face.
LevelFunction y_function(const WeightedComplex& X, const Face& s, int target_level);

/// Connected components of the 1-skeleton, each a sorted vertex list.
std::vector<std::vector<Vertex>> skeleton_components(const WeightedComplex& X);

}  // namespace hdx
