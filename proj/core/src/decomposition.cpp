#include "hdx/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "hdx/errors.hpp"
#include "hdx/expansion.hpp"
#include "hdx/operators.hpp"

namespace hdx {

// Factorization of the weighted up operator B = W_{i+1} U_i W_i^{-1}.
struct Decomposer::LevelFactor {
  int level = 0;  // i
  SparseMatrix up;
  Eigen::VectorXd w_lower, w_upper;  // sqrt(Pi_i), sqrt(Pi_{i+1})
  Eigen::MatrixXd left, right;       // thin SVD factors
  Eigen::VectorXd sigma;
  int rank = 0;
  double sigma_min = 0.0, sigma_max = 0.0;
  Eigen::LDLT<Eigen::MatrixXd> normal;
};

Decomposer::Decomposer(const GradedPoset& X, int max_level, DecompositionOptions options)
    : X_(&X), max_level_(max_level), options_(options) {
  if (max_level < -1 || max_level > X.dimension()) {
    throw InvalidParametersError("decomposition level " + std::to_string(max_level) +
                                 " is outside -1.." + std::to_string(X.dimension()));
  }
  for (int i = -1; i < max_level; ++i) {
    auto F = std::make_shared<LevelFactor>();
    F->level = i;
    F->up = up_operator(X, i).matrix;
    F->w_lower = X.weights(i).array().sqrt().matrix();
    F->w_upper = X.weights(i + 1).array().sqrt().matrix();
    const Eigen::MatrixXd B =
        F->w_upper.asDiagonal() * Eigen::MatrixXd(F->up) * F->w_lower.cwiseInverse().asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    F->left = svd.matrixU();
    F->right = svd.matrixV();
    F->sigma = svd.singularValues();
    F->sigma_max = F->sigma.size() ? F->sigma[0] : 0.0;
    // A wide B has a non-trivial kernel the thin SVD does not list.
    F->sigma_min = F->sigma.size() && B.rows() >= B.cols() ? F->sigma[F->sigma.size() - 1] : 0.0;
    for (Eigen::Index k = 0; k < F->sigma.size(); ++k) {
      if (F->sigma[k] > options_.svd_rel_cutoff * F->sigma_max) ++F->rank;
    }
    const double min_eig = F->sigma_min * F->sigma_min;
    if (min_eig <= options_.proper_threshold) {
      throw PropernessError("D U on level " + std::to_string(i) +
                                " is not positive definite (min eigenvalue " +
                                std::to_string(min_eig) + "); the decomposition is not unique",
                            i);
    }
    if (options_.solver == SplitSolver::normal_equations) {
      F->normal.compute(B.transpose() * B);
    }
    factors_.push_back(std::move(F));
  }
}

double Decomposer::min_du_eigenvalue(int i) const {
  const auto& F = factors_.at(static_cast<std::size_t>(i + 1));
  return F->sigma_min * F->sigma_min;
}

int Decomposer::harmonic_dimension(int i) const {
  if (i == -1) return 1;
  if (i < 0 || i > max_level_) throw InvalidParametersError("harmonic level out of range");
  const auto& F = factors_.at(static_cast<std::size_t>(i));
  return static_cast<int>(X_->size(i)) - F->rank;
}

LevelDecomposition Decomposer::decompose(const LevelFunction& f) const {
  const int l = f.level;
  if (l < -1 || l > max_level_) {
    throw InvalidParametersError("function level " + std::to_string(l) +
                                 " exceeds the decomposer's level " + std::to_string(max_level_));
  }
  if (f.values.size() != static_cast<Eigen::Index>(X_->size(l))) {
    throw DimensionMismatchError("function length does not match level size");
  }
  LevelDecomposition dec;
  dec.level = l;
  dec.harmonic.resize(static_cast<std::size_t>(l + 2));
  dec.parts.resize(static_cast<std::size_t>(l + 2));

  Eigen::VectorXd g = f.values;
  for (int j = l; j >= 0; --j) {
    const LevelFactor& F = *factors_[static_cast<std::size_t>(j)];  // U_{j-1}
    const Eigen::VectorXd rhs = F.w_upper.cwiseProduct(g);
    Eigen::VectorXd y;
    if (options_.solver == SplitSolver::normal_equations) {
      // B^T B y = B^T rhs with B = W U W^{-1}.
      const Eigen::VectorXd bt =
          F.w_lower.cwiseInverse().cwiseProduct(F.up.transpose() * F.w_upper.cwiseProduct(rhs));
      y = F.normal.solve(bt);
    } else {
      Eigen::VectorXd c = F.left.transpose() * rhs;
      for (Eigen::Index k = 0; k < c.size(); ++k) {
        c[k] = F.sigma[k] > options_.svd_rel_cutoff * F.sigma_max ? c[k] / F.sigma[k] : 0.0;
      }
      y = F.right * c;
    }
    const Eigen::VectorXd below = F.w_lower.cwiseInverse().cwiseProduct(y);
    dec.harmonic[static_cast<std::size_t>(j + 1)] = LevelFunction(j, g - F.up * below);
    g = below;
  }
  dec.harmonic[0] = LevelFunction(-1, g);

  Eigen::VectorXd total = Eigen::VectorXd::Zero(f.values.size());
  for (int i = -1; i <= l; ++i) {
    Eigen::VectorXd v = dec.harmonic[static_cast<std::size_t>(i + 1)].values;
    for (int j = i; j < l; ++j) v = factors_[static_cast<std::size_t>(j + 1)]->up * v;
    total += v;
    dec.parts[static_cast<std::size_t>(i + 1)] = LevelFunction(l, std::move(v));
  }

  const Eigen::VectorXd& w = X_->weights(l);
  const double fn = std::sqrt((w.array() * f.values.array().square()).sum());
  // Parts at rounding level are reported as exact zeros.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * fn;
  for (int i = -1; i <= l; ++i) {
    auto& part = dec.parts[static_cast<std::size_t>(i + 1)].values;
    if (std::sqrt((w.array() * part.array().square()).sum()) <= floor) {
      part.setZero();
      dec.harmonic[static_cast<std::size_t>(i + 1)].values.setZero();
    }
  }
  const double rn = std::sqrt((w.array() * (f.values - total).array().square()).sum());
  dec.residual = fn > 0.0 ? rn / fn : rn;
  if (dec.residual > options_.residual_tol) {
    throw NumericalError("decomposition residual " + std::to_string(dec.residual) +
                         " exceeds tolerance");
  }
  for (int i = -1; i < l; ++i) {
    const LevelFactor& F = *factors_[static_cast<std::size_t>(i + 1)];
    if (F.sigma_min * F.sigma_min < options_.ill_conditioned_threshold) dec.ill_conditioned = true;
    dec.condition_number = std::max(dec.condition_number, F.sigma_max / F.sigma_min);
  }
  return dec;
}

double coefficient_scale(int i, int level) noexcept {
  double s = 1.0;
  for (int j = i; j < level; ++j) s *= 1.0 - static_cast<double>(i + 1) / (j + 2);
  return s;
}

LevelDecomposition decompose(const GradedPoset& X, const LevelFunction& f,
                             const DecompositionOptions& options) {
  return Decomposer(X, f.level, options).decompose(f);
}

LevelDecomposition decompose(const WeightedComplex& X, const LevelFunction& f,
                             const DecompositionOptions& options) {
  LevelDecomposition dec = decompose(X.poset(), f, options);
  for (int i = -1; i <= f.level; ++i) {
    dec.coefficients.push_back(coefficient_scale(i, f.level) * dec.harmonic_part(i).values);
  }
  return dec;
}

int degree(const LevelDecomposition& dec, double rel_cutoff) {
  const auto& src = dec.coefficients;
  std::vector<Eigen::VectorXd> fallback;
  if (src.empty()) {
    for (const auto& h : dec.harmonic) fallback.push_back(h.values);
  }
  const auto& table = src.empty() ? fallback : src;
  double biggest = 0.0;
  for (const auto& c : table) {
    if (c.size()) biggest = std::max(biggest, c.cwiseAbs().maxCoeff());
  }
  if (biggest == 0.0) return 0;
  int deg = 0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (table[k].size() && table[k].cwiseAbs().maxCoeff() > rel_cutoff * biggest) {
      deg = static_cast<int>(k);  // faces on level k - 1 have k vertices
    }
  }
  return deg;
}

std::vector<double> level_weights(const LevelDecomposition& dec, const GradedPoset& X) {
  std::vector<double> out;
  for (const auto& p : dec.parts) out.push_back(inner_product(p, p, X));
  return out;
}

LevelFunction project_below(const LevelDecomposition& dec, int i) {
  if (i < -1 || i > dec.level) throw InvalidParametersError("projection level out of range");
  LevelFunction out = LevelFunction::constant(dec.level, dec.parts.front().size(), 0.0);
  for (int j = -1; j <= i; ++j) out.values += dec.part(j).values;
  return out;
}

double harmonicity_defect(const WeightedComplex& X, const LevelDecomposition& dec) {
  if (!dec.has_coefficients()) throw ValidationError("decomposition has no coefficient table");
  double scale = 0.0;
  for (const auto& c : dec.coefficients) {
    if (c.size()) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  }
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i <= dec.level; ++i) {
    const Eigen::VectorXd& c = dec.coefficients[static_cast<std::size_t>(i + 1)];
    if (c.size() == 0) continue;
    // sum_{s > t} Pi_i(s) c(s) = (i+1) Pi_{i-1}(t) (D_i c)(t).
    const Eigen::VectorXd weighted = X.weights(i).cwiseProduct(c);
    const SparseMatrix& P = X.poset().down_transition(i);
    const Eigen::VectorXd sums = P.transpose() * weighted * static_cast<double>(i + 1);
    const Eigen::VectorXd& wb = X.weights(i - 1);
    for (Eigen::Index t = 0; t < sums.size(); ++t) {
      worst = std::max(worst, std::abs(sums[t]) / (wb[t] * (i + 1) * scale));
    }
  }
  return worst;
}

int numeric_rank(const Eigen::MatrixXd& M, double rel_cutoff) {
  if (M.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s[k] > rel_cutoff * s[0]) ++r;
  }
  return r;
}

int y_basis_rank(const WeightedComplex& X, int basis_level, int level, double rel_cutoff) {
  if (basis_level < -1 || basis_level > level || level > X.dimension()) {
    throw InvalidParametersError("y basis needs -1 <= basis level <= level <= d");
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(X.size(level)),
                    static_cast<Eigen::Index>(X.size(basis_level)));
  for (std::size_t c = 0; c < X.size(basis_level); ++c) {
    M.col(static_cast<Eigen::Index>(c)) = y_function(X, X.face(basis_level, c), level).values;
  }
  return numeric_rank(M, rel_cutoff);
}

EigenvalueModel hdx_eigenvalue_model(int level, double gamma) {
  EigenvalueModel m;
  m.gamma = gamma;
  for (int i = -1; i <= level; ++i) {
    m.lambda.push_back(1.0 - static_cast<double>(i + 1) / (level + 2));
  }
  return m;
}

OrthogonalityReport verify_approximate_orthogonality(const GradedPoset& X, int level,
                                                     const EigenvalueModel& model, int trials,
                                                     std::uint64_t seed, double slack) {
  if (level < 0 || level >= X.dimension()) {
    throw InvalidParametersError("orthogonality is measured on levels 0..d-1");
  }
  if (model.lambda.size() != static_cast<std::size_t>(level + 2)) {
    throw DimensionMismatchError("eigenvalue model does not match the level");
  }
  OrthogonalityReport r;
  r.level = level;
  r.trials = trials;
  r.seed = seed;
  r.gamma = model.gamma;
  r.slack = slack;
  r.bound = slack * model.gamma;
  r.vacuous = model.gamma >= 1.0;

  const Decomposer dec(X, level);
  const LevelOperator du = upper_walk(X, level);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(X.size(level));
  auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (X.weights(level).array() * a.array() * b.array()).sum();
  };
  for (int t = 0; t < trials; ++t) {
    const LevelFunction f(level, Eigen::VectorXd::NullaryExpr(n, [&]() { return gauss(rng); }));
    const LevelDecomposition d = dec.decompose(f);
    std::vector<double> norms2;
    double sum2 = 0.0;
    double predicted = 0.0;
    for (int i = -1; i <= level; ++i) {
      const double n2 = ip(d.part(i).values, d.part(i).values);
      norms2.push_back(n2);
      sum2 += n2;
      predicted += model.lambda[static_cast<std::size_t>(i + 1)] * n2;
    }
    const double scale2 = 1e-24 * sum2;
    for (int i = -1; i <= level; ++i) {
      const double ni = norms2[static_cast<std::size_t>(i + 1)];
      if (ni <= scale2) continue;
      for (int j = i + 1; j <= level; ++j) {
        const double nj = norms2[static_cast<std::size_t>(j + 1)];
        if (nj <= scale2) continue;
        r.c1 = std::max(r.c1, std::abs(ip(d.part(i).values, d.part(j).values)) /
                                  std::sqrt(ni * nj));
      }
      const Eigen::VectorXd e =
          du.matrix * d.part(i).values - model.lambda[static_cast<std::size_t>(i + 1)] * d.part(i).values;
      r.c3 = std::max(r.c3, std::sqrt(std::max(0.0, ip(e, e)) / ni));
    }
    const double f2 = ip(f.values, f.values);
    r.c2 = std::max(r.c2, std::abs(f2 / sum2 - 1.0));
    const Eigen::VectorXd duf = du.matrix * f.values;
    r.c4 = std::max(r.c4, std::abs(ip(duf, f.values) - predicted) / f2);
  }
  const double limit = r.bound + 1e-9;
  r.within_bound = r.vacuous || (r.c1 <= limit && r.c2 <= limit && r.c3 <= limit && r.c4 <= limit);
  return r;
}

OrthogonalityReport verify_approximate_orthogonality(const WeightedComplex& X, int level,
                                                     int trials, std::uint64_t seed,
                                                     double slack) {
  const double gamma = gamma_hdx(X).gamma;
  return verify_approximate_orthogonality(X.poset(), level, hdx_eigenvalue_model(level, gamma),
                                          trials, seed, slack);
}

}  // namespace hdx
