#pragma once

#include "hdx/poset.hpp"

namespace hdx {

/// Linear map C^from_level -> C^to_level stored as a |X(to)| x |X(from)| sparse matrix.
struct LevelOperator {
  int from_level = 0;
  int to_level = 0;
  SparseMatrix matrix;
  bool row_stochastic = false;

  bool is_square() const noexcept { return from_level == to_level; }
  LevelFunction apply(const LevelFunction& f) const;
};

/// Composition `second after first` (first is applied first).
LevelOperator compose(const LevelOperator& second, const LevelOperator& first);
/// a * A + b * B on the same spaces.
LevelOperator combine(double a, const LevelOperator& A, double b, const LevelOperator& B);
LevelOperator identity_operator(const GradedPoset& X, int level);

/// U_i : C^i -> C^{i+1}, (U f)(s) = E[f(t)] over the downward step from s.
/// For complexes this is the mean of f over the i-subfaces of s. -1 <= i < d.
LevelOperator up_operator(const GradedPoset& X, int level);

/// D_{i+1} : C^{i+1} -> C^i, the conditional expectation over faces above t.
/// `level` is i + 1, with 0 <= level <= d.
LevelOperator down_operator(const GradedPoset& X, int level);

/// Iterated up operator U^steps starting at `level`.
LevelOperator up_power(const GradedPoset& X, int level, int steps);

/// Upper walk D_{j+1} U_j on level j (0 <= j <= d - 1).
LevelOperator upper_walk(const GradedPoset& X, int level);
/// Lower walk U_{j-1} D_j on level j (0 <= j <= d).
LevelOperator lower_walk(const GradedPoset& X, int level);

/// Non-lazy upper walk M+ = (DU - a I) / (1 - a), where a is the (constant)
/// diagonal of DU. For simplicial complexes a = 1/(j+2). Throws
/// ValidationError when the diagonal of DU is not constant within `tol`.
LevelOperator nonlazy_upper_walk(const GradedPoset& X, int level, double tol = 1e-9);

/// Pr_{(x,y) ~ W}[x = y] = sum_t Pi_j(t) W[t,t]. Throws on non-square W.
double laziness(const LevelOperator& W, const GradedPoset& X);

/// Largest deviation of a row sum from 1.
double row_stochastic_defect(const SparseMatrix& M);

}  // namespace hdx
