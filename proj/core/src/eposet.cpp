#include "hdx/eposet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "hdx/errors.hpp"
#include "hdx/operators.hpp"

namespace hdx {

namespace {

// Residual ||DU - r I - delta UD|| on one level, with walks built once.
class LevelResidual {
 public:
  LevelResidual(const GradedPoset& P, int level, const NormOptions& norm)
      : P_(&P), norm_(norm), du_(upper_walk(P, level)), ud_(lower_walk(P, level)) {
    dense_ = static_cast<Eigen::Index>(P.size(level)) <= norm.dense_limit;
    if (dense_) {
      if (self_adjointness_defect(du_, P) > norm.symmetry_tol ||
          self_adjointness_defect(ud_, P) > norm.symmetry_tol) {
        throw NumericalError("walks on level " + std::to_string(level) +
                             " are not self-adjoint under Pi");
      }
      const Eigen::MatrixXd a = symmetrized_dense(du_, P);
      const Eigen::MatrixXd b = symmetrized_dense(ud_, P);
      sdu_ = 0.5 * (a + a.transpose());
      sud_ = 0.5 * (b + b.transpose());
    }
  }

  double operator()(double r, double delta) const {
    if (dense_) {
      Eigen::MatrixXd m = sdu_ - delta * sud_;
      m.diagonal().array() -= r;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    }
    const LevelOperator shifted =
        combine(1.0, du_, -r, identity_operator(*P_, du_.from_level));
    return weighted_operator_norm(combine(1.0, shifted, -delta, ud_), *P_, norm_).value;
  }

 private:
  const GradedPoset* P_;
  NormOptions norm_;
  LevelOperator du_, ud_;
  bool dense_ = true;
  Eigen::MatrixXd sdu_, sud_;
};

template <typename Fn>
double golden_section(Fn&& f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

using Point = std::array<double, 2>;

template <typename Fn>
Point nelder_mead(Fn&& f, Point start, double step, int iterations) {
  std::array<Point, 3> x{start, Point{start[0] + step, start[1]}, Point{start[0], start[1] + step}};
  std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};
  auto along = [](const Point& from, const Point& to, double t) {
    return Point{from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])};
  };
  for (int it = 0; it < iterations; ++it) {
    std::array<int, 3> o{0, 1, 2};
    std::sort(o.begin(), o.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = o[0], mid = o[1], worst = o[2];
    if (fx[worst] - fx[best] <= 1e-17) break;
    const Point centroid{(x[best][0] + x[mid][0]) / 2, (x[best][1] + x[mid][1]) / 2};
    const Point refl = along(x[worst], centroid, 2.0);
    const double fr = f(refl);
    if (fr < fx[best]) {
      const Point expd = along(x[worst], centroid, 3.0);
      const double fe = f(expd);
      if (fe < fr) {
        x[worst] = expd;
        fx[worst] = fe;
      } else {
        x[worst] = refl;
        fx[worst] = fr;
      }
    } else if (fr < fx[mid]) {
      x[worst] = refl;
      fx[worst] = fr;
    } else {
      const Point contr = along(x[worst], centroid, 0.5);
      const double fcn = f(contr);
      if (fcn < fx[worst]) {
        x[worst] = contr;
        fx[worst] = fcn;
      } else {
        for (int k : {mid, worst}) {
          x[k] = along(x[best], x[k], 0.5);
          fx[k] = f(x[k]);
        }
      }
    }
  }
  const auto it = std::min_element(fx.begin(), fx.end());
  return x[static_cast<std::size_t>(it - fx.begin())];
}

// Constant diagonal of a walk, if it exists within tol.
std::optional<double> constant_diagonal(const LevelOperator& W, double tol) {
  const Eigen::VectorXd diag = Eigen::VectorXd(W.matrix.diagonal());
  const double mean = diag.mean();
  if ((diag.array() - mean).abs().maxCoeff() > tol) return std::nullopt;
  return mean;
}

}  // namespace

double eposet_residual(const GradedPoset& P, int level, double r, double delta,
                       const NormOptions& norm) {
  return LevelResidual(P, level, norm)(r, delta);
}

EposetFit fit_eposet(const GradedPoset& P, const FitOptions& options) {
  EposetFit fit;
  for (int j = 0; j < P.dimension(); ++j) {
    const LevelResidual res(P, j, options.norm);
    const double delta = golden_section([&](double d) { return res(1.0 - d, d); },
                                        options.delta_min, options.delta_max,
                                        options.golden_iterations);
    double best_r = 1.0 - delta, best_d = delta;
    double best = res(best_r, best_d);
    if (options.nelder_mead && best > 0.0) {
      const Point p = nelder_mead([&](const Point& x) { return res(x[0], x[1]); },
                                  Point{best_r, best_d}, 1e-3, 400);
      const double v = res(p[0], p[1]);
      if (v < best) {
        best = v;
        best_r = p[0];
        best_d = p[1];
      }
    }
    fit.r.push_back(best_r);
    fit.delta.push_back(best_d);
    fit.per_level_residual.push_back(best);
    fit.gamma = std::max(fit.gamma, best);
  }
  fit.exact = fit.gamma <= options.exact_tol;
  return fit;
}

SdCriterion check_sd_criterion(const GradedPoset& P, int level, double tol) {
  SdCriterion c;
  c.level = level;
  const LevelOperator du = upper_walk(P, level);
  const LevelOperator ud = lower_walk(P, level);
  const auto alpha = constant_diagonal(du, tol);
  const auto beta = constant_diagonal(ud, tol);
  if (!alpha || !beta) {
    c.reason = std::string("the ") + (!alpha ? "upper" : "lower") + " walk on level " +
               std::to_string(level) + " has a non-constant diagonal";
    return c;
  }
  c.alpha = *alpha;
  c.beta = *beta;
  if (c.alpha >= 1.0 - 1e-12 || c.beta >= 1.0 - 1e-12) {
    c.reason = "a walk on level " + std::to_string(level) + " never moves";
    return c;
  }
  c.applicable = true;
  c.delta = (1.0 - c.alpha) / (1.0 - c.beta);
  c.r = 1.0 - c.delta;
  const auto n = du.matrix.rows();
  SparseMatrix I(n, n);
  I.setIdentity();
  const SparseMatrix diff =
      (du.matrix - c.alpha * I) / (1.0 - c.alpha) - (ud.matrix - c.beta * I) / (1.0 - c.beta);
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) {
      c.walk_discrepancy = std::max(c.walk_discrepancy, std::abs(it.value()));
    }
  }
  c.holds = c.walk_discrepancy <= tol;
  if (!c.holds) c.reason = "the two walks do not share a non-lazy part";
  return c;
}

SdCriterion check_sd_criterion(const GradedPoset& P, int level, const EposetFit& fit,
                               double tol) {
  SdCriterion c = check_sd_criterion(P, level, tol);
  if (!c.applicable || !c.holds) return c;
  const auto j = static_cast<std::size_t>(level);
  if (j >= fit.r.size()) throw InvalidParametersError("fit has no parameters for this level");
  if (std::abs(fit.r[j] - c.r) > tol || std::abs(fit.delta[j] - c.delta) > tol) {
    c.holds = false;
    c.reason = "fitted parameters differ from the diagonal prediction";
  }
  return c;
}

EposetEigentable eigentable(const EposetFit& fit, int level) {
  if (level < 0 || static_cast<std::size_t>(level) >= fit.r.size()) {
    throw InvalidParametersError("eigentable level must lie in 0.." +
                                 std::to_string(static_cast<int>(fit.r.size()) - 1));
  }
  return basic_eigentable(fit.r, fit.delta, level);
}

EigenvalueModel eposet_eigenvalue_model(const EposetFit& fit, int level) {
  const EposetEigentable table = eigentable(fit, level);
  EigenvalueModel m;
  m.gamma = fit.gamma;
  for (int i = -1; i <= level; ++i) m.lambda.push_back(table.eigenvalue(i));
  return m;
}

Eigen::VectorXd predicted_spectrum(const GradedPoset& P, const EposetEigentable& table) {
  std::vector<double> values;
  for (int i = -1; i <= table.level; ++i) {
    const long long mult = static_cast<long long>(P.size(i)) -
                           (i >= 0 ? static_cast<long long>(P.size(i - 1)) : 0LL);
    for (long long k = 0; k < mult; ++k) values.push_back(table.eigenvalue(i));
  }
  std::sort(values.begin(), values.end());
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

EigentableCheck verify_eigentable(const GradedPoset& P, const EposetFit& fit, int level,
                                  int trials, std::uint64_t seed) {
  const EposetEigentable table = eigentable(fit, level);
  EigentableCheck c;
  c.level = level;
  c.gamma = fit.gamma;
  c.eigen_error.assign(static_cast<std::size_t>(level + 2), 0.0);
  c.norm_ratio_error.assign(static_cast<std::size_t>(level + 2), 0.0);

  const Decomposer dec(P, level);
  const LevelOperator du = upper_walk(P, level);
  const Eigen::VectorXd& w = P.weights(level);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(P.size(level));
  for (int t = 0; t < trials; ++t) {
    const LevelFunction f(level, Eigen::VectorXd::NullaryExpr(n, [&]() { return gauss(rng); }));
    const LevelDecomposition d = dec.decompose(f);
    for (int i = -1; i <= level; ++i) {
      const Eigen::VectorXd& fi = d.part(i).values;
      const double n2 = (w.array() * fi.array().square()).sum();
      if (n2 <= 1e-24) continue;
      const Eigen::VectorXd e = du.matrix * fi - table.eigenvalue(i) * fi;
      auto& ee = c.eigen_error[static_cast<std::size_t>(i + 1)];
      ee = std::max(ee, std::sqrt((w.array() * e.array().square()).sum() / n2));
      const Eigen::VectorXd& hi = d.harmonic_part(i).values;
      const double h2 = (P.weights(i).array() * hi.array().square()).sum();
      const double rho = table.rho[static_cast<std::size_t>(level - i)];
      auto& ne = c.norm_ratio_error[static_cast<std::size_t>(i + 1)];
      ne = std::max(ne, std::abs(n2 / (rho * h2) - 1.0));
    }
  }
  c.spectrum = weighted_spectrum(du, P);
  c.predicted = predicted_spectrum(P, table);
  c.spectrum_error = c.spectrum.size() == c.predicted.size()
                         ? (c.spectrum - c.predicted).cwiseAbs().maxCoeff()
                         : std::numeric_limits<double>::infinity();
  return c;
}

ForcingReport laziness_forcing_check(const GradedPoset& P, const EposetFit& fit, double tol) {
  ForcingReport rep;
  rep.sums_within_gamma = true;
  rep.witness_within_gamma = true;
  for (std::size_t j = 0; j < fit.r.size(); ++j) {
    ForcingLevel L;
    L.level = static_cast<int>(j);
    L.r = fit.r[j];
    L.delta = fit.delta[j];
    L.gamma = fit.per_level_residual[j];
    L.sum_defect = std::abs(L.r + L.delta - 1.0);
    const LevelOperator du = upper_walk(P, L.level);
    const LevelOperator ud = lower_walk(P, L.level);
    L.alpha = constant_diagonal(du, 1e-9);
    if (L.alpha) L.alpha_gap = std::abs(*L.alpha - L.r);
    const Eigen::VectorXd lazy = Eigen::VectorXd(ud.matrix.diagonal());
    L.lower_laziness.assign(lazy.data(), lazy.data() + lazy.size());
    Eigen::Index arg = 0;
    L.min_laziness = lazy.minCoeff(&arg);
    L.min_laziness_index = static_cast<std::size_t>(arg);
    const double du_diag = du.matrix.coeff(arg, arg);
    L.witness_defect = std::abs(du_diag - L.r - L.delta * L.min_laziness);
    rep.sums_within_gamma = rep.sums_within_gamma && L.sum_defect <= L.gamma + tol;
    rep.witness_within_gamma = rep.witness_within_gamma && L.witness_defect <= L.gamma + tol;
    rep.levels.push_back(std::move(L));
  }
  return rep;
}

ClosedForm complete_complex_closed_form(int n, int level) {
  ClosedForm c{};
  c.alpha = 1.0 / (level + 2);
  c.beta = 1.0 / (n - level);
  c.delta = (1.0 - c.alpha) / (1.0 - c.beta);
  c.r = 1.0 - c.delta;
  return c;
}

ClosedForm grassmann_closed_form(int q, int n, int level) {
  ClosedForm c{};
  c.alpha = (q - 1.0) / (std::pow(q, level + 2) - 1.0);
  c.beta = (q - 1.0) / (std::pow(q, n - level) - 1.0);
  c.delta = (1.0 - c.alpha) / (1.0 - c.beta);
  c.r = 1.0 - c.delta;
  return c;
}

double grassmann_gap_constant(const EposetEigentable& table, int q, int n) {
  const double base = q / (static_cast<double>(q) * q - 1.0);
  const double scale = std::pow(q, n - table.level);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= table.level; ++i) {
    worst = std::max(worst, (table.eigenvalue(i) - base) * scale);
  }
  return worst;
}

}  // namespace hdx
