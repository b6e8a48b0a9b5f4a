#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

/// Coefficient values allowed in a Boolean degree-1 form, in tie-break order.
enum class DictatorLabel : std::uint8_t { zero, one, alpha, alpha_minus_one };

/// alpha_k = 1/(k+1).
double label_value(DictatorLabel label, int k) noexcept;
const char* label_name(DictatorLabel label) noexcept;

/// g(y) = sum_i d(i) y_i over X(0) evaluated on k-faces.
struct DegreeOneForm {
  int k = 0;
  std::vector<Vertex> vertices;        // sorted
  std::vector<DictatorLabel> labels;   // parallel to vertices

  double coefficient(Vertex v) const;
  double evaluate(const Face& face) const;
  LevelFunction to_function(const WeightedComplex& X) const;
};

using IndependentSet = std::vector<Vertex>;

bool is_independent(const WeightedComplex& X, const IndependentSet& I);

/// Indicator of intersecting I on X(level) (default: top level), or of not
/// intersecting it when complemented: sum_v y_v/(k+1) - sum_{v in I} y_v.
/// Throws ValidationError if I is not independent in the 1-skeleton.
LevelFunction independent_set_indicator(const WeightedComplex& X, const IndependentSet& I,
                                        bool complemented, int level = -2);

/// One Boolean degree-1 function: per skeleton component, an independent set
/// and a complement flag. Connected skeletons have one component.
struct BooleanDegreeOne {
  std::vector<IndependentSet> sets;
  std::vector<bool> complemented;
  LevelFunction function;
};

struct DegreeOneEnumeration {
  std::vector<BooleanDegreeOne> functions;  // distinct as functions
  std::size_t components = 1;
  bool proper = true;
  std::vector<std::string> notices;
};

/// Every Boolean degree-1 function on X(d) as (independent set, flag) per
/// component. Requires d >= 2; properness and connectivity are reported.
DegreeOneEnumeration enumerate_boolean_degree_one(const WeightedComplex& X);

/// Brute force: all 2^|X(d)| Boolean functions that lie in span{y_v}.
/// Guarded to |X(d)| <= 24. Returned as bitmasks over X(d) indices.
std::vector<std::uint64_t> brute_force_boolean_degree_one(const WeightedComplex& X,
                                                          double tol = 1e-9);

/// Function as a bitmask over level indices (values must be 0/1).
std::uint64_t boolean_mask(const LevelFunction& f);

struct SliceFit {
  enum class Kind : std::uint8_t { zero, one, dictator, anti_dictator };
  Kind kind = Kind::zero;
  Vertex vertex = 0;          // meaningful for (anti_)dictator
  double distance = 0.0;      // Pr[F != g] under the slice measure
  bool in_theorem_range = true;

  double value_on(const Face& face) const;
  std::string description() const;  // "0", "1", "y_3", "1-y_3"
};

/// Exhaustive search over {0, 1, y_i, 1 - y_i} on a complete-complex slice.
/// Candidate order (first minimum wins): 0, 1, y_0, 1-y_0, y_1, 1-y_1, ...
/// `distance` is measured with the level's Pi weights. Throws on non-Boolean F.
SliceFit slice_fkn_oracle(const WeightedComplex& slice, const LevelFunction& F);

/// Same search over explicit faces and weights (the faces of one local slice).
SliceFit slice_fkn_search(std::span<const Vertex> ground, std::span<const Face> faces,
                          std::span<const double> values, std::span<const double> weights,
                          int k);

/// Labels d_t of a slice fit over the ground vertices.
std::vector<DictatorLabel> slice_labels(const SliceFit& fit, std::span<const Vertex> ground,
                                        int k);

struct LocalFit {
  Face face;
  SliceFit fit;
  std::vector<DictatorLabel> labels;  // parallel to face vertices
  double error = 0.0;                 // E_{s in face}[(f - F)^2]
};

struct FknOptions {
  unsigned jobs = 0;
  double tol = 1e-9;
};

struct FknResult {
  int k = 0;
  DegreeOneForm g;
  LevelFunction best_degree_one;   // f: least squares onto span{y_v}
  double epsilon = 0.0;            // E[(F - f)^2]
  double pr_disagree = 0.0;        // Pr_Pi[F != g]
  double agreement_rate = 0.0;     // Pr_{(t1,t2) ~ D_{2k,4k}}[d_t1 = d_t2 on t1 ∩ t2]
  double pr_boolean = 0.0;         // Pr_Pi[g in {0,1}]
  double local_consistency = 0.0;  // Pr_t[d_t = d|_t]
  double mean_epsilon_t = 0.0;     // E_t[eps_t]
  double mean_delta_u = 0.0;       // E_u[delta_u]
  bool hypothesis_4k2_lt_d = false;
  std::vector<LocalFit> local_t;   // over X(2k)
  std::vector<LocalFit> local_u;   // over X(4k)
};

/// Constructive recovery of a Boolean degree-1 approximation of F on X(k).
/// Throws StructuralError when d < 4k or k < 1.
FknResult fkn_recover(const WeightedComplex& X, const LevelFunction& F,
                      const FknOptions& options = {});

/// Best Pi-weighted least-squares approximation of F by span{y_v} on X(level).
LevelFunction best_degree_one_approximation(const WeightedComplex& X, const LevelFunction& F);

struct NoisyInstance {
  LevelFunction noisy;
  double flipped_mass = 0.0;
  std::size_t flipped = 0;
};

/// Flips each value independently with probability eps (seeded mt19937_64).
NoisyInstance flip_noise(const WeightedComplex& X, const LevelFunction& F, double eps,
                         std::uint64_t seed);

}  // namespace hdx
