#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdx/finite_field.hpp"
#include "hdx/poset.hpp"

namespace hdx {

/// Cap on q^n for Grassmann generation.
inline constexpr std::uint64_t kGrassmannMaxAmbient = std::uint64_t{1} << 20;

/// A subspace of GF(q)^n in reduced row echelon form.
/// `rows` holds dim() rows of n entries each, row-major.
struct Subspace {
  int n = 0;
  std::vector<std::uint8_t> rows;

  int dim() const noexcept { return n == 0 ? 0 : static_cast<int>(rows.size()) / n; }
  /// Digit string of the RREF basis, rows separated by '.'; "0" for {0}.
  std::string key() const;
};

/// Row-reduce the given vectors (each of length n) and return the span.
Subspace span_of(const FiniteField& F, int n, std::vector<std::uint8_t> vectors);

/// All subspaces of GF(q)^n of dimension k, in canonical enumeration order.
std::vector<Subspace> enumerate_subspaces(const FiniteField& F, int n, int k);

/// Gaussian binomial [n choose k]_q computed by the product formula.
std::uint64_t gaussian_binomial(int n, int k, int q);

/// Gr_q(n, d): subspaces of dimension 1..d+1 (plus {0} at rank -1), uniform
/// top measure, downward step a uniformly random codimension-1 subspace.
/// Labels are Subspace::key(). Throws ResourceLimitError if q^n > 2^20 and
/// InvalidParametersError on bad parameters.
GradedPoset grassmann_poset(int q, int n, int d);

}  // namespace hdx
