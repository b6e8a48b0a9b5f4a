#pragma once

#include <string>

#include <Eigen/Dense>

#include "hdx/operators.hpp"

namespace hdx {

/// Name of the operator norm used in every report.
inline constexpr const char* kNormConvention = "pi-weighted-spectral";

struct NormOptions {
  /// Levels up to this size use a dense symmetric eigensolve.
  Eigen::Index dense_limit = 4000;
  /// Relative tolerance for the Lanczos path.
  double tol = 1e-10;
  /// Allowed relative asymmetry of Pi^{1/2} A Pi^{-1/2}.
  double symmetry_tol = 1e-9;
  int max_lanczos_steps = 400;
};

struct NormResult {
  double value = 0.0;
  /// Two-sided bracket on the true norm; equal to value on the dense path.
  double lower = 0.0;
  double upper = 0.0;
  std::string method;  // "dense" or "lanczos"
};

/// Pi^{1/2} A Pi^{-1/2} for a square operator on `level`, as a dense matrix.
Eigen::MatrixXd symmetrized_dense(const LevelOperator& A, const GradedPoset& X);
SparseMatrix symmetrized_sparse(const LevelOperator& A, const GradedPoset& X);

/// Max relative asymmetry of the symmetrized matrix.
double self_adjointness_defect(const LevelOperator& A, const GradedPoset& X);

/// Pi-weighted spectral norm of a Pi-self-adjoint operator, i.e. the largest
/// absolute eigenvalue of its symmetrization. Throws NumericalError if A is
/// not self-adjoint within options.symmetry_tol.
NormResult weighted_operator_norm(const LevelOperator& A, const GradedPoset& X,
                                  const NormOptions& options = {});

/// Eigenvalues (ascending) of a Pi-self-adjoint operator by dense solve.
Eigen::VectorXd weighted_spectrum(const LevelOperator& A, const GradedPoset& X);

/// Smallest eigenvalue and its eigenfunction (in the original coordinates).
struct ExtremeEigenpair {
  double value = 0.0;
  Eigen::VectorXd function;
};
ExtremeEigenpair weighted_min_eigenpair(const LevelOperator& A, const GradedPoset& X);

/// Extreme absolute eigenvalue of a symmetric sparse matrix by Lanczos with
/// full reorthogonalization. Exposed for testing against the dense path.
NormResult lanczos_abs_max(const SparseMatrix& S, double tol, int max_steps,
                           unsigned seed = 7);

}  // namespace hdx
