#include "hdx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "hdx/errors.hpp"

namespace hdx {

namespace {

void require_square(const LevelOperator& A, const GradedPoset& X) {
  if (!A.is_square() || A.matrix.rows() != A.matrix.cols() ||
      A.matrix.rows() != static_cast<Eigen::Index>(X.size(A.from_level))) {
    throw DimensionMismatchError("spectral quantities need a square operator on one level");
  }
}

Eigen::MatrixXd symmetric_part(const Eigen::MatrixXd& S) { return 0.5 * (S + S.transpose()); }

void require_self_adjoint(const LevelOperator& A, const GradedPoset& X, double tol) {
  const double defect = self_adjointness_defect(A, X);
  if (defect > tol) {
    throw NumericalError("operator on level " + std::to_string(A.from_level) +
                         " is not self-adjoint under Pi (defect " + std::to_string(defect) +
                         "); symmetrize it explicitly");
  }
}

}  // namespace

Eigen::MatrixXd symmetrized_dense(const LevelOperator& A, const GradedPoset& X) {
  require_square(A, X);
  const Eigen::ArrayXd s = X.weights(A.from_level).array().sqrt();
  Eigen::MatrixXd M = Eigen::MatrixXd(A.matrix);
  return s.matrix().asDiagonal() * M * s.inverse().matrix().asDiagonal();
}

SparseMatrix symmetrized_sparse(const LevelOperator& A, const GradedPoset& X) {
  require_square(A, X);
  const Eigen::VectorXd s = X.weights(A.from_level).array().sqrt().matrix();
  SparseMatrix S = A.matrix;
  for (Eigen::Index r = 0; r < S.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(S, r); it; ++it) {
      it.valueRef() *= s[r] / s[it.col()];
    }
  }
  return S;
}

double self_adjointness_defect(const LevelOperator& A, const GradedPoset& X) {
  const SparseMatrix S = symmetrized_sparse(A, X);
  const SparseMatrix St = S.transpose();
  const SparseMatrix diff = S - St;
  double asym = 0.0;
  double scale = 1.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) {
      asym = std::max(asym, std::abs(it.value()));
    }
  }
  for (Eigen::Index r = 0; r < S.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(S, r); it; ++it) {
      scale = std::max(scale, std::abs(it.value()));
    }
  }
  return asym / scale;
}

NormResult weighted_operator_norm(const LevelOperator& A, const GradedPoset& X,
                                  const NormOptions& options) {
  require_square(A, X);
  require_self_adjoint(A, X, options.symmetry_tol);
  const Eigen::Index n = A.matrix.rows();
  if (n <= options.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_part(symmetrized_dense(A, X)),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
    const auto& ev = es.eigenvalues();
    const double v = std::max(std::abs(ev[0]), std::abs(ev[n - 1]));
    return {v, v, v, "dense"};
  }
  SparseMatrix S = symmetrized_sparse(A, X);
  SparseMatrix St = S.transpose();
  SparseMatrix sym = 0.5 * (S + St);
  return lanczos_abs_max(sym, options.tol, options.max_lanczos_steps);
}

Eigen::VectorXd weighted_spectrum(const LevelOperator& A, const GradedPoset& X) {
  require_square(A, X);
  require_self_adjoint(A, X, 1e-9);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_part(symmetrized_dense(A, X)),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
  return es.eigenvalues();
}

ExtremeEigenpair weighted_min_eigenpair(const LevelOperator& A, const GradedPoset& X) {
  require_square(A, X);
  require_self_adjoint(A, X, 1e-9);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_part(symmetrized_dense(A, X)));
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
  const Eigen::ArrayXd s = X.weights(A.from_level).array().sqrt();
  ExtremeEigenpair out;
  out.value = es.eigenvalues()[0];
  out.function = (es.eigenvectors().col(0).array() / s).matrix();
  return out;
}

NormResult lanczos_abs_max(const SparseMatrix& S, double tol, int max_steps, unsigned seed) {
  const Eigen::Index n = S.rows();
  if (n == 0) return {0.0, 0.0, 0.0, "lanczos"};
  double gersh = 0.0;
  for (Eigen::Index r = 0; r < S.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(S, r); it; ++it) row += std::abs(it.value());
    gersh = std::max(gersh, row);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Eigen::Index m_max = std::min<Eigen::Index>(n, std::max(1, max_steps));
  Eigen::MatrixXd Q(n, m_max);
  std::vector<double> alpha, beta;
  Eigen::VectorXd q = Eigen::VectorXd::NullaryExpr(n, [&]() { return g(rng); });
  q.normalize();
  NormResult best{0.0, 0.0, gersh, "lanczos"};
  for (Eigen::Index k = 0; k < m_max; ++k) {
    Q.col(k) = q;
    Eigen::VectorXd w = S * q;
    alpha.push_back(q.dot(w));
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * w);
    }
    const double b = w.norm();
    const bool exhausted = b < 1e-14 * std::max(1.0, gersh);
    const bool check = exhausted || k + 1 == m_max || (k + 1) % 10 == 0;
    if (check) {
      const auto m = static_cast<Eigen::Index>(alpha.size());
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
      for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const auto& th = es.eigenvalues();
      const Eigen::Index pick = std::abs(th[0]) >= std::abs(th[m - 1]) ? 0 : m - 1;
      const double theta = std::abs(th[pick]);
      const double resid = exhausted ? 0.0 : b * std::abs(es.eigenvectors()(m - 1, pick));
      best.value = best.lower = theta;
      best.upper = std::min(gersh, theta + resid);
      if (exhausted || resid <= tol * std::max(theta, 1e-300)) return best;
    }
    if (exhausted) break;
    beta.push_back(b);
    q = w / b;
  }
  return best;
}

}  // namespace hdx
