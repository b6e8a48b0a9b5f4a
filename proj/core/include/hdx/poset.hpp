#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hdx {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// A real function on the level X(level), indexed like that level.
struct LevelFunction {
  int level = 0;
  Eigen::VectorXd values;

  LevelFunction() = default;
  LevelFunction(int lvl, Eigen::VectorXd v) : level(lvl), values(std::move(v)) {}

  static LevelFunction constant(int level, std::size_t size, double c) {
    return {level, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(size), c)};
  }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

/// Raw per-level data used to assemble a GradedPoset.
struct PosetLevel {
  std::vector<std::string> labels;
  Eigen::VectorXd weights;
  /// Downward transition: rows index this level, columns the level below;
  /// entry (s, t) = Pr[next element is t | current element is s].
  /// Empty for level -1.
  SparseMatrix down;
};

/// Graded measured poset X(-1), ..., X(d) with a Markov chain of level measures.
///
/// Level -1 holds the unique minimum. Each level i >= 0 carries a row-stochastic
/// downward transition to level i-1, and the level measure of i-1 is the
/// push-forward of the measure of i through it. Instances are immutable.
class GradedPoset {
 public:
  GradedPoset() = default;

  /// Validates and takes ownership. `levels[0]` is X(-1).
  /// Only the top level's weights are required; lower weights are recomputed
  /// by push-forward and, if supplied, checked against it.
  static GradedPoset from_levels(std::vector<PosetLevel> levels, double tol = 1e-12);

  int dimension() const noexcept { return static_cast<int>(levels_.size()) - 2; }
  bool has_level(int level) const noexcept {
    return level >= -1 && level <= dimension();
  }
  std::size_t size(int level) const { return level_at(level).labels.size(); }
  const Eigen::VectorXd& weights(int level) const { return level_at(level).weights; }
  /// Transition from X(level) to X(level - 1); level must be >= 0.
  const SparseMatrix& down_transition(int level) const;
  const std::string& label(int level, std::size_t index) const {
    return level_at(level).labels.at(index);
  }
  std::optional<std::size_t> find(int level, std::string_view label) const;

 private:
  const PosetLevel& level_at(int level) const;

  std::vector<PosetLevel> levels_;
  std::vector<std::unordered_map<std::string, std::size_t>> index_;
};

/// <f, g> = sum_t Pi_i(t) f(t) g(t). Throws on level or size mismatch.
double inner_product(const LevelFunction& f, const LevelFunction& g, const GradedPoset& X);
double norm(const LevelFunction& f, const GradedPoset& X);

}  // namespace hdx
