#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hdx/complex.hpp"
#include "hdx/poset.hpp"

namespace hdx {

/// How each level split f = h + U g is solved.
enum class SplitSolver {
  svd,               // pseudo-inverse of the weighted U (default)
  normal_equations,  // LDLT of D U; used as an independent route in tests
};

struct DecompositionOptions {
  SplitSolver solver = SplitSolver::svd;
  /// Singular values below cutoff * sigma_max count as zero.
  double svd_rel_cutoff = 1e-10;
  /// min eig(DU) at or below this is improper.
  double proper_threshold = 1e-10;
  /// min eig(DU) below this (but above proper_threshold) flags ill-conditioning.
  double ill_conditioned_threshold = 1e-6;
  /// Reconstruction failure threshold, relative to ||f||.
  double residual_tol = 1e-8;
};

/// f = f_{-1} + ... + f_l with f_i = U^{l-i} h_i and D h_i = 0 (i >= 0).
struct LevelDecomposition {
  int level = 0;
  std::vector<LevelFunction> parts;     // index i + 1
  std::vector<LevelFunction> harmonic;  // h_i on X(i), index i + 1
  /// Harmonic coefficients ~f(s) per level (complexes only; empty for posets).
  std::vector<Eigen::VectorXd> coefficients;
  double residual = 0.0;  // ||f - sum f_i|| / ||f|| (0 for f = 0)
  bool ill_conditioned = false;
  double condition_number = 1.0;  // max over levels of sigma_max / sigma_min of weighted U

  const LevelFunction& part(int i) const { return parts.at(static_cast<std::size_t>(i + 1)); }
  const LevelFunction& harmonic_part(int i) const {
    return harmonic.at(static_cast<std::size_t>(i + 1));
  }
  bool has_coefficients() const noexcept { return !coefficients.empty(); }
};

/// Level-by-level solver that caches one factorization per level.
///
/// Built for a fixed top level `max_level`; the structure must be proper up to
/// it (D_{i+1} U_i positive definite for i < max_level), otherwise the
/// constructor throws PropernessError naming the first bad level.
class Decomposer {
 public:
  Decomposer(const GradedPoset& X, int max_level, DecompositionOptions options = {});

  int max_level() const noexcept { return max_level_; }
  const DecompositionOptions& options() const noexcept { return options_; }

  /// Decomposes f in C^l for l <= max_level. No coefficient table.
  LevelDecomposition decompose(const LevelFunction& f) const;

  /// Smallest eigenvalue of D_{i+1} U_i (sigma_min^2 of the weighted U_i).
  double min_du_eigenvalue(int i) const;
  /// Numeric nullity of D_i (dimension of H^i) for 0 <= i <= max_level.
  int harmonic_dimension(int i) const;

 private:
  struct LevelFactor;
  const GradedPoset* X_;
  int max_level_;
  DecompositionOptions options_;
  std::vector<std::shared_ptr<const LevelFactor>> factors_;  // index i + 1, maps C^i -> C^{i+1}
};

/// Decomposes f on a complex; fills the coefficient table from the harmonic
/// parts via ~f(s) = prod_{j=i}^{l-1} (1 - (i+1)/(j+2)) h_i(s).
LevelDecomposition decompose(const WeightedComplex& X, const LevelFunction& f,
                             const DecompositionOptions& options = {});
LevelDecomposition decompose(const GradedPoset& X, const LevelFunction& f,
                             const DecompositionOptions& options = {});

/// Scaling between h_i and its coefficients on level l.
double coefficient_scale(int i, int level) noexcept;

/// Max |s| with |~f(s)| > rel_cutoff * max |~f|; the zero function has degree 0.
int degree(const LevelDecomposition& dec, double rel_cutoff = 1e-9);

/// ||f_i||^2 per level, index i + 1.
std::vector<double> level_weights(const LevelDecomposition& dec, const GradedPoset& X);
/// f_{<= i} = f_{-1} + ... + f_i.
LevelFunction project_below(const LevelDecomposition& dec, int i);

/// Max over levels i and faces t in X(i-1) of
/// |sum_{s > t} Pi_i(s) ~f(s)| / (Pi_{i-1}(t) (i+1) max|~f|), the max taken over all levels.
double harmonicity_defect(const WeightedComplex& X, const LevelDecomposition& dec);

/// Column rank / basis check: y_s for s in X(basis_level) restricted to
/// X(level); returns the numeric rank.
int y_basis_rank(const WeightedComplex& X, int basis_level, int level, double rel_cutoff = 1e-10);

/// Numeric rank of a dense matrix via SVD.
int numeric_rank(const Eigen::MatrixXd& M, double rel_cutoff = 1e-10);

/// Eigenvalue model used when measuring approximate orthogonality.
struct EigenvalueModel {
  /// lambda[i + 1] is the predicted DU eigenvalue of f_i on level l.
  std::vector<double> lambda;
  double gamma = 0.0;
};

/// lambda_i = 1 - (i+1)/(l+2), gamma = gamma_hdx(X).
EigenvalueModel hdx_eigenvalue_model(int level, double gamma);

struct OrthogonalityReport {
  int level = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  double c1 = 0.0;  // max |<f_i,f_j>| / (||f_i|| ||f_j||)
  double c2 = 0.0;  // | ||f||^2 / sum ||f_i||^2 - 1 |
  double c3 = 0.0;  // max ||DU f_i - lambda_i f_i|| / ||f_i||
  double c4 = 0.0;  // |<DU f, f> - sum lambda_i ||f_i||^2| / ||f||^2
  double slack = 50.0;
  double bound = 0.0;  // slack * gamma
  bool vacuous = false;  // gamma >= 1: no constraint
  bool within_bound = false;
};

/// Measures c1..c4 on `trials` random Gaussian functions on X(level), level < d.
OrthogonalityReport verify_approximate_orthogonality(const GradedPoset& X, int level,
                                                     const EigenvalueModel& model, int trials,
                                                     std::uint64_t seed = 1,
                                                     double slack = 50.0);

/// HDX form: gamma = gamma_hdx(X), lambda_i = 1 - (i+1)/(l+2).
OrthogonalityReport verify_approximate_orthogonality(const WeightedComplex& X, int level,
                                                     int trials, std::uint64_t seed = 1,
                                                     double slack = 50.0);

}  // namespace hdx
