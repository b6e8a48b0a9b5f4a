#include "hdx/grassmann.hpp"

#include <string>
#include <unordered_map>

#include "hdx/complex.hpp"
#include "hdx/errors.hpp"
#include "hdx/face.hpp"

namespace hdx {

std::string Subspace::key() const {
  const int k = dim();
  if (k == 0) return "0";
  std::string s;
  for (int r = 0; r < k; ++r) {
    if (r) s += '.';
    for (int c = 0; c < n; ++c) {
      const int v = rows[static_cast<std::size_t>(r * n + c)];
      if (v < 10) {
        s += static_cast<char>('0' + v);
      } else {
        s += '(' + std::to_string(v) + ')';
      }
    }
  }
  return s;
}

Subspace span_of(const FiniteField& F, int n, std::vector<std::uint8_t> vectors) {
  if (n <= 0 || vectors.size() % static_cast<std::size_t>(n) != 0) {
    throw DimensionMismatchError("vector data is not a multiple of the ambient dimension");
  }
  const int m = static_cast<int>(vectors.size()) / n;
  auto at = [&](int r, int c) -> std::uint8_t& {
    return vectors[static_cast<std::size_t>(r * n + c)];
  };
  int rank = 0;
  for (int c = 0; c < n && rank < m; ++c) {
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(at(pivot, j), at(rank, j));
    const std::uint8_t s = F.inv(at(rank, c));
    for (int j = 0; j < n; ++j) at(rank, j) = F.mul(at(rank, j), s);
    for (int r = 0; r < m; ++r) {
      if (r == rank || at(r, c) == 0) continue;
      const std::uint8_t f = at(r, c);
      for (int j = 0; j < n; ++j) at(r, j) = F.sub(at(r, j), F.mul(f, at(rank, j)));
    }
    ++rank;
  }
  Subspace S;
  S.n = n;
  S.rows.assign(vectors.begin(), vectors.begin() + static_cast<std::ptrdiff_t>(rank * n));
  return S;
}

std::vector<Subspace> enumerate_subspaces(const FiniteField& F, int n, int k) {
  std::vector<Subspace> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back(Subspace{n, {}});
    return out;
  }
  const int q = F.order();
  std::vector<Vertex> cols(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) cols[static_cast<std::size_t>(c)] = static_cast<Vertex>(c);
  for (const Face& pivots : subsets_of_size(cols, static_cast<std::size_t>(k))) {
    // Free slots: (row r, column c) with c after the row's pivot and not a pivot column.
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r) {
      for (int c = static_cast<int>(pivots[static_cast<std::size_t>(r)]) + 1; c < n; ++c) {
        if (!pivots.contains(static_cast<Vertex>(c))) free.emplace_back(r, c);
      }
    }
    std::vector<int> digit(free.size(), 0);
    while (true) {
      Subspace S;
      S.n = n;
      S.rows.assign(static_cast<std::size_t>(k * n), 0);
      for (int r = 0; r < k; ++r) {
        S.rows[static_cast<std::size_t>(r * n + static_cast<int>(pivots[static_cast<std::size_t>(r)]))] = 1;
      }
      for (std::size_t f = 0; f < free.size(); ++f) {
        S.rows[static_cast<std::size_t>(free[f].first * n + free[f].second)] =
            static_cast<std::uint8_t>(digit[f]);
      }
      out.push_back(std::move(S));
      std::size_t pos = free.size();
      while (pos > 0) {
        if (++digit[pos - 1] < q) break;
        digit[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return out;
}

std::uint64_t gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  auto qpow = [q](int e) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i) v *= static_cast<std::uint64_t>(q);
    return v;
  };
  // Product over i of (q^{n-i} - 1) / (q^{i+1} - 1); partial products stay integral.
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    num = qpow(n - i) - 1;
    den = qpow(i + 1) - 1;
    result = result * num / den;
  }
  return result;
}

GradedPoset grassmann_poset(int q, int n, int d) {
  if (prime_power(q).first == 0) {
    throw InvalidParametersError("q = " + std::to_string(q) + " is not a prime power");
  }
  if (n < 1 || d < 0 || d + 1 > n) {
    throw InvalidParametersError("Grassmann poset needs 0 <= d and d + 1 <= n (got n=" +
                                 std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  double ambient = 1.0;
  for (int i = 0; i < n; ++i) ambient *= q;
  if (ambient > static_cast<double>(kGrassmannMaxAmbient)) {
    throw ResourceLimitError("q^n = " + std::to_string(static_cast<long long>(ambient)) +
                             " exceeds the Grassmann guard of 2^20");
  }
  for (int j = 1; j <= d + 1; ++j) {
    if (gaussian_binomial(n, j, q) > max_faces_guard()) {
      throw ResourceLimitError("Grassmann level of dimension " + std::to_string(j) +
                               " exceeds the face guard");
    }
  }
  const FiniteField F(q);

  std::vector<PosetLevel> levels(static_cast<std::size_t>(d + 2));
  std::vector<std::vector<Subspace>> spaces(static_cast<std::size_t>(d + 2));
  std::vector<std::unordered_map<std::string, std::size_t>> index(spaces.size());
  for (int j = -1; j <= d; ++j) {
    auto& sp = spaces[static_cast<std::size_t>(j + 1)];
    sp = enumerate_subspaces(F, n, j + 1);
    auto& L = levels[static_cast<std::size_t>(j + 1)];
    for (std::size_t t = 0; t < sp.size(); ++t) {
      L.labels.push_back(sp[t].key());
      index[static_cast<std::size_t>(j + 1)].emplace(L.labels.back(), t);
    }
  }

  for (int j = 0; j <= d; ++j) {
    const int k = j + 1;
    // Non-zero functionals on the coefficient space, first non-zero entry 1.
    std::vector<std::vector<std::uint8_t>> functionals;
    for (int lead = 0; lead < k; ++lead) {
      std::vector<int> digit(static_cast<std::size_t>(k - lead - 1), 0);
      while (true) {
        std::vector<std::uint8_t> a(static_cast<std::size_t>(k), 0);
        a[static_cast<std::size_t>(lead)] = 1;
        for (std::size_t t = 0; t < digit.size(); ++t) {
          a[static_cast<std::size_t>(lead) + 1 + t] = static_cast<std::uint8_t>(digit[t]);
        }
        functionals.push_back(std::move(a));
        std::size_t pos = digit.size();
        while (pos > 0) {
          if (++digit[pos - 1] < q) break;
          digit[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
    const double p = 1.0 / static_cast<double>(functionals.size());
    const auto& upper = spaces[static_cast<std::size_t>(j + 1)];
    const auto& lower_index = index[static_cast<std::size_t>(j)];
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(upper.size() * functionals.size());
    for (std::size_t u = 0; u < upper.size(); ++u) {
      const Subspace& V = upper[u];
      for (const auto& a : functionals) {
        int lead = 0;
        while (a[static_cast<std::size_t>(lead)] == 0) ++lead;
        std::vector<std::uint8_t> vecs;
        vecs.reserve(static_cast<std::size_t>((k - 1) * n));
        for (int i = 0; i < k; ++i) {
          if (i == lead) continue;
          // Basis vector e_i - a_i e_lead of the kernel, mapped through V's rows.
          const std::uint8_t ai = F.neg(a[static_cast<std::size_t>(i)]);
          for (int c = 0; c < n; ++c) {
            const std::uint8_t x = V.rows[static_cast<std::size_t>(i * n + c)];
            const std::uint8_t y = V.rows[static_cast<std::size_t>(lead * n + c)];
            vecs.push_back(F.add(x, F.mul(ai, y)));
          }
        }
        const Subspace W = span_of(F, n, std::move(vecs));
        const auto it = lower_index.find(W.key());
        if (it == lower_index.end() || W.dim() != k - 1) {
          throw NumericalError("codimension-1 subspace lookup failed");
        }
        trips.emplace_back(static_cast<int>(u), static_cast<int>(it->second), p);
      }
    }
    auto& L = levels[static_cast<std::size_t>(j + 1)];
    L.down.resize(static_cast<Eigen::Index>(upper.size()),
                  static_cast<Eigen::Index>(spaces[static_cast<std::size_t>(j)].size()));
    L.down.setFromTriplets(trips.begin(), trips.end());
  }
  levels.back().weights =
      Eigen::VectorXd::Ones(static_cast<Eigen::Index>(spaces.back().size()));
  return GradedPoset::from_levels(std::move(levels));
}

}  // namespace hdx
