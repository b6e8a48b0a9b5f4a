#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdx/complex.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

/// Underlying weighted graph G_s of the link of a face s.
struct LinkView {
  Face base;
  std::vector<Vertex> vertices;  // X_s(0), sorted
  Eigen::VectorXd vertex_weights;  // w_s(x), sums to 1
  struct Edge {
    std::size_t a, b;  // indices into `vertices`, a < b
    double weight;     // w_s({x,y}), sums to 1 over edges
  };
  std::vector<Edge> edges;
  /// Non-lazy adjacency walk A_s (row-stochastic, reversible w.r.t. vertex_weights).
  Eigen::MatrixXd adjacency;
};

/// Link of s with the conditional weights. Requires dim(s) <= d - 2.
/// Throws ValidationError if s is not a face or is too high-dimensional.
LinkView link(const WeightedComplex& X, const Face& s);

/// lambda(A_s) = max(|lambda_2|, |lambda_m|). Throws UndefinedSpectrumError
/// for links with fewer than two vertices.
double lambda_link(const LinkView& L);

struct LevelGamma {
  std::vector<double> per_level;  // index j = 0..d-1
  double gamma = 0.0;
  std::vector<NormResult> norms;
};

/// gamma_j = ||M+_j - U_{j-1} D_j|| for j = 0..d-1; gamma = max. Requires d >= 1.
LevelGamma gamma_hdx(const WeightedComplex& X, const NormOptions& options = {});

struct LinkScanOptions {
  /// 0 means scan every face of dimension <= d-2.
  std::size_t max_links = 0;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

struct LinkLambda {
  Face face;
  double lambda = 0.0;
  std::size_t vertex_count = 0;
};

struct LinkGamma {
  double gamma = 0.0;
  Face worst;
  std::vector<LinkLambda> per_link;  // scan order: by level, then lexicographic
  std::vector<Face> skipped;          // degenerate links (< 2 vertices)
  bool truncated = false;             // scan stopped at max_links
};

/// Max of lambda(A_s) over s in X(-1) ∪ ... ∪ X(d-2). Ties on the maximum are
/// resolved toward the lexicographically smallest base face.
LinkGamma gamma_link(const WeightedComplex& X, const LinkScanOptions& options = {});

struct EquivalenceReport {
  double gamma_hdx = 0.0;
  double gamma_link = 0.0;
  double upper_bound = 0.0;  // 3 d gamma_hdx
  bool hdx_le_link = false;
  bool link_le_bound = false;
  double tol = 1e-9;
  bool holds() const noexcept { return hdx_le_link && link_le_bound; }
};

/// gamma_hdx <= gamma_link + tol and gamma_link <= 3 d gamma_hdx + tol.
EquivalenceReport check_equivalence(const WeightedComplex& X, double tol = 1e-9,
                                    const LinkScanOptions& options = {});
EquivalenceReport check_equivalence(const LevelGamma& hdx, const LinkGamma& links,
                                    int dimension, double tol = 1e-9);

struct ProperReport {
  bool proper = true;
  std::vector<double> min_eigenvalue;  // of D_{i+1} U_i, index i + 1 for i = -1..d-1
  /// First level whose D U is not positive definite, with a kernel vector.
  std::optional<int> witness_level;
  Eigen::VectorXd witness;
};

/// Proper iff the smallest eigenvalue of D_{i+1} U_i exceeds `threshold` for
/// every i <= max_level - 1 (max_level defaults to d).
ProperReport check_proper(const GradedPoset& X, double threshold = 1e-10,
                          std::optional<int> max_level = std::nullopt);

/// <M+_i f, f> and E_{s ~ Pi_{i-1}} <A_s f_s, f_s>, for checking localization.
std::pair<double, double> localization_sides(const WeightedComplex& X, int level,
                                             const LevelFunction& f);

struct ExpansionReport {
  int dimension = 0;
  LevelGamma hdx;
  LinkGamma links;
  EquivalenceReport equivalence;
  ProperReport proper;
  struct Laziness {
    int level;
    double upper;    // DU
    double lower;    // UD
    double nonlazy;  // M+
  };
  std::vector<Laziness> laziness_table;
};

ExpansionReport analyze(const WeightedComplex& X, const NormOptions& norm = {},
                        const LinkScanOptions& scan = {}, double tol = 1e-9);

}  // namespace hdx
