#include "hdx/finite_field.hpp"

#include <string>
#include <utility>

#include "hdx/errors.hpp"

namespace hdx {

std::pair<int, int> prime_power(int q) noexcept {
  if (q < 2) return {0, 0};
  int p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int m = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) return {0, 0};
  return {p, m};
}

namespace {

// Polynomials over GF(p) of degree < m are encoded as base-p integers.
std::vector<int> digits(int a, int p, int m) {
  std::vector<int> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out[static_cast<std::size_t>(i)] = a % p;
    a /= p;
  }
  return out;
}

int encode(const std::vector<int>& ds, int p) {
  int a = 0;
  for (std::size_t i = ds.size(); i-- > 0;) a = a * p + ds[i];
  return a;
}

// Product of a and b modulo the monic polynomial x^m + sum_i modulus[i] x^i.
int poly_mul(int a, int b, int p, int m, const std::vector<int>& modulus) {
  const auto da = digits(a, p, m);
  const auto db = digits(b, p, m);
  std::vector<int> prod(static_cast<std::size_t>(2 * m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      prod[static_cast<std::size_t>(i + j)] =
          (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] *
                                                       db[static_cast<std::size_t>(j)]) %
          p;
    }
  }
  for (int deg = 2 * m - 1; deg >= m; --deg) {
    const int c = prod[static_cast<std::size_t>(deg)];
    if (c == 0) continue;
    prod[static_cast<std::size_t>(deg)] = 0;
    for (int i = 0; i < m; ++i) {
      auto& slot = prod[static_cast<std::size_t>(deg - m + i)];
      slot = ((slot - c * modulus[static_cast<std::size_t>(i)]) % p + p) % p;
    }
  }
  prod.resize(static_cast<std::size_t>(m));
  return encode(prod, p);
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q), p_(0) {
  const auto [p, m] = prime_power(q);
  if (p == 0 || q > 256) {
    throw InvalidParametersError("field order " + std::to_string(q) +
                                 " is not a prime power in [2, 256]");
  }
  p_ = p;
  const auto n = static_cast<std::size_t>(q);
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  neg_.assign(n, 0);
  inv_.assign(n, 0);

  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p, m);
    std::vector<int> dn(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) dn[i] = (p - da[i]) % p;
    neg_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(encode(dn, p));
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p, m);
      std::vector<int> ds(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) ds[i] = (da[i] + db[i]) % p;
      add_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] =
          static_cast<std::uint8_t>(encode(ds, p));
    }
  }

  // Search for an irreducible modulus: the one whose products have no zero divisors.
  for (int cand = 0; cand < q; ++cand) {
    const auto modulus = digits(cand, p, m);
    if (m > 1 && modulus[0] == 0) continue;
    bool field = true;
    std::vector<std::uint8_t> table(n * n, 0);
    std::vector<std::uint8_t> inverse(n, 0);
    for (int a = 1; a < q && field; ++a) {
      for (int b = 1; b < q; ++b) {
        const int c = poly_mul(a, b, p, m, modulus);
        if (c == 0) {
          field = false;
          break;
        }
        table[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] =
            static_cast<std::uint8_t>(c);
        if (c == 1) inverse[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
      }
    }
    if (field) {
      mul_ = std::move(table);
      inv_ = std::move(inverse);
      return;
    }
  }
  throw NumericalError("no irreducible polynomial found for GF(" + std::to_string(q) + ")");
}

}  // namespace hdx
