#pragma once

#include <cstdint>
#include <vector>

namespace hdx {

/// Arithmetic in GF(q), q = p^m, with elements encoded as 0..q-1 (base-p
/// digits of a polynomial over GF(p) modulo a fixed irreducible polynomial).
/// Intended for small q; operations are table lookups.
class FiniteField {
 public:
  /// Throws InvalidParametersError unless q is a prime power in [2, 256].
  explicit FiniteField(int q);

  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  /// a must be non-zero.
  std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }

 private:
  int q_;
  int p_;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

/// Prime power decomposition q = p^m; returns {0, 0} when q is not a prime power.
std::pair<int, int> prime_power(int q) noexcept;

}  // namespace hdx
