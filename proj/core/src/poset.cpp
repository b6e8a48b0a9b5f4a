#include "hdx/poset.hpp"

#include <cmath>
#include <string>

#include "hdx/errors.hpp"

namespace hdx {

namespace {

std::string level_name(int level) { return "level " + std::to_string(level); }

}  // namespace

GradedPoset GradedPoset::from_levels(std::vector<PosetLevel> levels, double tol) {
  if (levels.size() < 2) {
    throw ValidationError("a graded poset needs at least the levels -1 and 0");
  }
  if (levels[0].labels.size() != 1) {
    throw StructuralError("level -1 must hold exactly one element");
  }
  const int d = static_cast<int>(levels.size()) - 2;
  for (int i = 0; i <= d + 1; ++i) {
    if (levels[i].labels.empty()) {
      throw StructuralError(level_name(i - 1) + " is empty");
    }
  }

  PosetLevel& top = levels.back();
  const auto top_size = static_cast<Eigen::Index>(top.labels.size());
  if (top.weights.size() != top_size) {
    throw DimensionMismatchError("top level weights have the wrong length");
  }
  if ((top.weights.array() <= 0.0).any() || !top.weights.allFinite()) {
    throw ValidationError("top level weights must be positive and finite");
  }
  top.weights /= top.weights.sum();

  for (int i = d; i >= 0; --i) {
    PosetLevel& upper = levels[i + 1];
    PosetLevel& lower = levels[i];
    const auto rows = static_cast<Eigen::Index>(upper.labels.size());
    const auto cols = static_cast<Eigen::Index>(lower.labels.size());
    if (upper.down.rows() != rows || upper.down.cols() != cols) {
      throw DimensionMismatchError("transition from " + level_name(i) + " has shape " +
                                   std::to_string(upper.down.rows()) + "x" +
                                   std::to_string(upper.down.cols()) + ", expected " +
                                   std::to_string(rows) + "x" + std::to_string(cols));
    }
    upper.down.makeCompressed();
    for (Eigen::Index r = 0; r < rows; ++r) {
      double sum = 0.0;
      bool any = false;
      for (SparseMatrix::InnerIterator it(upper.down, r); it; ++it) {
        if (it.value() < 0.0 || !std::isfinite(it.value())) {
          throw ValidationError("negative transition probability at " + level_name(i));
        }
        sum += it.value();
        any = any || it.value() > 0.0;
      }
      if (!any || std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("transition row " + std::to_string(r) + " at " + level_name(i) +
                              " sums to " + std::to_string(sum));
      }
    }
    Eigen::VectorXd pushed = upper.down.transpose() * upper.weights;
    if (lower.weights.size() != 0) {
      if (lower.weights.size() != cols) {
        throw DimensionMismatchError(level_name(i - 1) + " weights have the wrong length");
      }
      if ((lower.weights - pushed).cwiseAbs().maxCoeff() > std::max(tol, 1e-9)) {
        throw ValidationError(level_name(i - 1) +
                              " weights are not the push-forward of the level above");
      }
    }
    if ((pushed.array() <= 0.0).any()) {
      throw StructuralError(level_name(i - 1) +
                            " has an element below no element of positive weight");
    }
    lower.weights = std::move(pushed);
  }

  GradedPoset P;
  P.index_.resize(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    auto& idx = P.index_[l];
    idx.reserve(levels[l].labels.size());
    for (std::size_t j = 0; j < levels[l].labels.size(); ++j) {
      if (!idx.emplace(levels[l].labels[j], j).second) {
        throw ValidationError("duplicate label '" + levels[l].labels[j] + "' at " +
                              level_name(static_cast<int>(l) - 1));
      }
    }
  }
  P.levels_ = std::move(levels);
  return P;
}

const PosetLevel& GradedPoset::level_at(int level) const {
  if (!has_level(level)) {
    throw InvalidParametersError(level_name(level) + " is outside -1.." +
                                 std::to_string(dimension()));
  }
  return levels_[static_cast<std::size_t>(level + 1)];
}

const SparseMatrix& GradedPoset::down_transition(int level) const {
  if (level < 0) throw InvalidParametersError("level -1 has no downward transition");
  return level_at(level).down;
}

std::optional<std::size_t> GradedPoset::find(int level, std::string_view label) const {
  if (!has_level(level)) return std::nullopt;
  const auto& idx = index_[static_cast<std::size_t>(level + 1)];
  auto it = idx.find(std::string(label));
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

double inner_product(const LevelFunction& f, const LevelFunction& g, const GradedPoset& X) {
  if (f.level != g.level) {
    throw DimensionMismatchError("inner product of functions on levels " +
                                 std::to_string(f.level) + " and " + std::to_string(g.level));
  }
  const Eigen::VectorXd& w = X.weights(f.level);
  if (f.values.size() != w.size() || g.values.size() != w.size()) {
    throw DimensionMismatchError("function length does not match level size");
  }
  return (w.array() * f.values.array() * g.values.array()).sum();
}

double norm(const LevelFunction& f, const GradedPoset& X) {
  return std::sqrt(std::max(0.0, inner_product(f, f, X)));
}

}  // namespace hdx
