#include "hdx/operators.hpp"

#include <cmath>
#include <string>

#include "hdx/errors.hpp"

namespace hdx {

namespace {

void require_level(const GradedPoset& X, int level, int lo, int hi, const char* what) {
  if (level < lo || level > hi) {
    throw InvalidParametersError(std::string(what) + " level " + std::to_string(level) +
                                 " is outside " + std::to_string(lo) + ".." +
                                 std::to_string(hi) + " (dimension " +
                                 std::to_string(X.dimension()) + ")");
  }
}

}  // namespace

LevelFunction LevelOperator::apply(const LevelFunction& f) const {
  if (f.level != from_level || f.values.size() != matrix.cols()) {
    throw DimensionMismatchError("operator from level " + std::to_string(from_level) +
                                 " applied to a function on level " + std::to_string(f.level));
  }
  return {to_level, matrix * f.values};
}

LevelOperator compose(const LevelOperator& second, const LevelOperator& first) {
  if (second.from_level != first.to_level || second.matrix.cols() != first.matrix.rows()) {
    throw DimensionMismatchError("cannot compose operators: level " +
                                 std::to_string(first.to_level) + " feeds level " +
                                 std::to_string(second.from_level));
  }
  LevelOperator out;
  out.from_level = first.from_level;
  out.to_level = second.to_level;
  out.matrix = (second.matrix * first.matrix).pruned();
  out.row_stochastic = second.row_stochastic && first.row_stochastic;
  return out;
}

LevelOperator combine(double a, const LevelOperator& A, double b, const LevelOperator& B) {
  if (A.from_level != B.from_level || A.to_level != B.to_level ||
      A.matrix.rows() != B.matrix.rows() || A.matrix.cols() != B.matrix.cols()) {
    throw DimensionMismatchError("cannot combine operators on different spaces");
  }
  LevelOperator out;
  out.from_level = A.from_level;
  out.to_level = A.to_level;
  out.matrix = a * A.matrix + b * B.matrix;
  out.row_stochastic = A.row_stochastic && B.row_stochastic && a >= 0 && b >= 0 &&
                       std::abs(a + b - 1.0) < 1e-15;
  return out;
}

LevelOperator identity_operator(const GradedPoset& X, int level) {
  require_level(X, level, -1, X.dimension(), "identity");
  const auto n = static_cast<Eigen::Index>(X.size(level));
  LevelOperator out;
  out.from_level = out.to_level = level;
  out.matrix.resize(n, n);
  out.matrix.setIdentity();
  out.row_stochastic = true;
  return out;
}

LevelOperator up_operator(const GradedPoset& X, int level) {
  require_level(X, level, -1, X.dimension() - 1, "up operator");
  LevelOperator out;
  out.from_level = level;
  out.to_level = level + 1;
  out.matrix = X.down_transition(level + 1);
  out.row_stochastic = true;
  return out;
}

LevelOperator down_operator(const GradedPoset& X, int level) {
  require_level(X, level, 0, X.dimension(), "down operator");
  const SparseMatrix& P = X.down_transition(level);
  const Eigen::VectorXd& upper = X.weights(level);
  const Eigen::VectorXd& lower = X.weights(level - 1);
  LevelOperator out;
  out.from_level = level;
  out.to_level = level - 1;
  SparseMatrix T = P.transpose();  // rows: lower elements
  for (Eigen::Index r = 0; r < T.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(T, r); it; ++it) {
      it.valueRef() *= upper[it.col()] / lower[r];
    }
  }
  out.matrix = std::move(T);
  out.row_stochastic = true;
  return out;
}

LevelOperator up_power(const GradedPoset& X, int level, int steps) {
  if (steps < 0) throw InvalidParametersError("negative power of the up operator");
  require_level(X, level + steps, -1, X.dimension(), "up power target");
  LevelOperator out = identity_operator(X, level);
  for (int s = 0; s < steps; ++s) out = compose(up_operator(X, level + s), out);
  return out;
}

LevelOperator upper_walk(const GradedPoset& X, int level) {
  require_level(X, level, 0, X.dimension() - 1, "upper walk");
  return compose(down_operator(X, level + 1), up_operator(X, level));
}

LevelOperator lower_walk(const GradedPoset& X, int level) {
  require_level(X, level, 0, X.dimension(), "lower walk");
  return compose(up_operator(X, level - 1), down_operator(X, level));
}

LevelOperator nonlazy_upper_walk(const GradedPoset& X, int level, double tol) {
  LevelOperator du = upper_walk(X, level);
  const Eigen::VectorXd diag = Eigen::VectorXd(du.matrix.diagonal());
  const double a = diag.mean();
  if ((diag.array() - a).abs().maxCoeff() > tol) {
    throw ValidationError("the upper walk on level " + std::to_string(level) +
                          " has a non-constant diagonal; the non-lazy walk is undefined");
  }
  if (a >= 1.0 - 1e-12) {
    throw ValidationError("the upper walk on level " + std::to_string(level) +
                          " never moves; the non-lazy walk is undefined");
  }
  const auto n = du.matrix.rows();
  SparseMatrix I(n, n);
  I.setIdentity();
  LevelOperator out;
  out.from_level = out.to_level = level;
  out.matrix = (du.matrix - a * I) / (1.0 - a);
  out.row_stochastic = true;
  return out;
}

double laziness(const LevelOperator& W, const GradedPoset& X) {
  if (!W.is_square() || W.matrix.rows() != W.matrix.cols()) {
    throw DimensionMismatchError("laziness needs a walk from a level to itself");
  }
  const Eigen::VectorXd diag = Eigen::VectorXd(W.matrix.diagonal());
  return X.weights(W.from_level).dot(diag);
}

double row_stochastic_defect(const SparseMatrix& M) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < M.outerSize(); ++r) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(M, r); it; ++it) s += it.value();
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

}  // namespace hdx
