#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/decomposition.hpp"
#include "hdx/poset.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

/// Fitted (r, delta, gamma) with ||DU - r_j I - delta_j UD|| per level j = 0..k-1.
struct EposetFit {
  std::vector<double> r;
  std::vector<double> delta;
  double gamma = 0.0;
  std::vector<double> per_level_residual;
  bool exact = false;  // gamma <= exact_tol
};

struct FitOptions {
  double exact_tol = 1e-9;
  /// Search interval for delta along the r + delta = 1 line.
  double delta_min = 0.0;
  double delta_max = 2.0;
  int golden_iterations = 200;
  bool nelder_mead = true;
  NormOptions norm;
};

/// Residual norm of DU - r I - delta UD on `level`.
double eposet_residual(const GradedPoset& P, int level, double r, double delta,
                       const NormOptions& norm = {});

/// Per level: golden-section over delta with r = 1 - delta (the constant
/// function pins r + delta = 1 up to gamma), then a 2-D Nelder-Mead refinement
/// that is kept only when it lowers the residual.
EposetFit fit_eposet(const GradedPoset& P, const FitOptions& options = {});

struct SdCriterion {
  int level = 0;
  bool applicable = false;
  bool holds = false;
  std::string reason;
  double alpha = 0.0;  // constant diagonal of DU
  double beta = 0.0;   // constant diagonal of UD
  double delta = 0.0;  // (1 - alpha) / (1 - beta)
  double r = 0.0;      // 1 - delta
  double walk_discrepancy = 0.0;  // max |M_from_DU - M_from_UD|
};

/// Checks DU = a I + (1-a) M and UD = b I + (1-b) M for one M.
SdCriterion check_sd_criterion(const GradedPoset& P, int level, double tol = 1e-9);
/// Same, plus agreement of (r, delta) with a fit at that level.
SdCriterion check_sd_criterion(const GradedPoset& P, int level, const EposetFit& fit,
                               double tol = 1e-9);

/// Closed-form tables r^l_j, delta^l_j and norm ratios rho^l_j.
///
/// delta^l_0 = 1, delta^l_j = prod_{t=l-j+1}^{l} delta_t,
/// r^l_j = sum_{t=0}^{j-1} r_{l-t} delta^l_t, and r^l_{l+2} = 1 (constants).
/// rho^l_j = prod_{t=0}^{j-1} r^{l-1-t}_{j-t} is the predicted
/// ||U^j h||^2 / ||h||^2 for harmonic h on level l - j.
template <typename T>
struct BasicEigentable {
  int level = 0;
  /// r_super[m][j] for m = 0..level, j = 0..m+2.
  std::vector<std::vector<T>> r_super;
  /// delta_super[m][j] for m = 0..level, j = 0..m+1.
  std::vector<std::vector<T>> delta_super;
  /// rho[j] for j = 0..level+1 (ratio for f_{level-j}).
  std::vector<T> rho;

  const T& r_at(int m, int j) const { return r_super.at(m).at(j); }
  const T& delta_at(int m, int j) const { return delta_super.at(m).at(j); }
  /// Predicted DU eigenvalue on V^i at this level: r^l_{l-i+1}.
  const T& eigenvalue(int i) const { return r_at(level, level - i + 1); }
};

template <typename T>
BasicEigentable<T> basic_eigentable(const std::vector<T>& r, const std::vector<T>& delta,
                                    int level) {
  BasicEigentable<T> table;
  table.level = level;
  table.r_super.resize(static_cast<std::size_t>(level) + 1);
  table.delta_super.resize(static_cast<std::size_t>(level) + 1);
  for (int m = 0; m <= level; ++m) {
    auto& ds = table.delta_super[m];
    auto& rs = table.r_super[m];
    ds.assign(static_cast<std::size_t>(m) + 2, T(1));
    rs.assign(static_cast<std::size_t>(m) + 3, T(0));
    for (int j = 1; j <= m + 1; ++j) ds[j] = ds[j - 1] * delta[m - j + 1];
    for (int j = 1; j <= m + 1; ++j) rs[j] = rs[j - 1] + r[m - j + 1] * ds[j - 1];
    rs[m + 2] = T(1);
  }
  table.rho.assign(static_cast<std::size_t>(level) + 2, T(1));
  for (int j = 1; j <= level + 1; ++j) {
    T prod(1);
    for (int t = 0; t <= j - 1; ++t) {
      const int m = level - 1 - t;
      // Level -1 only carries the constant function: r^{-1}_1 = 1 by convention.
      prod = prod * (m < 0 ? T(1) : table.r_at(m, j - t));
    }
    table.rho[j] = prod;
  }
  return table;
}

/// The approximate-eigenvalue formula written as
/// r_l + sum_{j=l-i}^{l-1} (prod_{t=j+1}^{l} delta_t) r_j.
/// Indexing note: this equals the product-sum r^l_{i+1}.
template <typename T>
T eigenvalue_sum_formula(const std::vector<T>& r, const std::vector<T>& delta, int level,
                         int i) {
  T total = r[level];
  for (int j = level - i; j <= level - 1; ++j) {
    T prod(1);
    for (int t = j + 1; t <= level; ++t) prod = prod * delta[t];
    total = total + prod * r[j];
  }
  return total;
}

using EposetEigentable = BasicEigentable<double>;

/// Requires level <= k - 1 where k = fit.r.size().
EposetEigentable eigentable(const EposetFit& fit, int level);

/// Eigenvalue model for verify_approximate_orthogonality from a fit.
EigenvalueModel eposet_eigenvalue_model(const EposetFit& fit, int level);

struct EigentableCheck {
  int level = 0;
  double gamma = 0.0;
  /// max_i ||DU f_i - r^l_{l-i+1} f_i|| / ||f_i|| over trials, index i + 1.
  std::vector<double> eigen_error;
  /// max_i | ||f_i||^2 / (rho ||h_i||^2) - 1 |, index i + 1.
  std::vector<double> norm_ratio_error;
  /// Dense spectrum of DU and the predicted multiset (both ascending).
  Eigen::VectorXd spectrum;
  Eigen::VectorXd predicted;
  double spectrum_error = 0.0;  // max |spectrum - predicted|, inf if sizes differ
};

/// Thm-style check on random functions plus a dense spectrum comparison.
EigentableCheck verify_eigentable(const GradedPoset& P, const EposetFit& fit, int level,
                                  int trials = 20, std::uint64_t seed = 1);

/// Predicted DU spectrum at `level`: r^l_{l-i+1} with multiplicity
/// |X(i)| - |X(i-1)| for i = -1..l, sorted ascending.
Eigen::VectorXd predicted_spectrum(const GradedPoset& P, const EposetEigentable& table);

struct ForcingLevel {
  int level = 0;
  double r = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double sum_defect = 0.0;  // |r + delta - 1|, should be <= gamma
  std::optional<double> alpha;  // constant DU diagonal when it exists
  double alpha_gap = 0.0;       // |alpha - r|
  std::vector<double> lower_laziness;  // UD[s,s] per element
  std::size_t min_laziness_index = 0;
  double min_laziness = 0.0;
  /// |alpha - r - delta * laziness(sigma)| at the min-laziness witness.
  double witness_defect = 0.0;
};

struct ForcingReport {
  std::vector<ForcingLevel> levels;
  bool sums_within_gamma = false;   // every sum_defect <= gamma + tol
  bool witness_within_gamma = false;
};

ForcingReport laziness_forcing_check(const GradedPoset& P, const EposetFit& fit,
                                     double tol = 1e-9);

/// Grassmann and complete-complex closed forms for (alpha, beta).
struct ClosedForm {
  double alpha, beta, delta, r;
};
ClosedForm complete_complex_closed_form(int n, int level);
ClosedForm grassmann_closed_form(int q, int n, int level);

/// Grassmann gap constant: max over i >= 0 of (r^l_{l-i+1} - q/(q^2-1)) q^{n-l}.
double grassmann_gap_constant(const EposetEigentable& table, int q, int n);

}  // namespace hdx
