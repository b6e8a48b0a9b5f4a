#pragma once

// Brute-force reference computations used to cross-check the library.
// Everything here is written directly from the definitions and avoids the
// library's operator and solver code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "hdx/complex.hpp"
#include "hdx/operators.hpp"

namespace oracle {

using hdx::Face;
using hdx::Vertex;
using hdx::WeightedComplex;

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Eigen::MatrixXd dense(const hdx::SparseMatrix& M) { return Eigen::MatrixXd(M); }

// Pi_i(t) = sum over top faces s containing t of Pi_d(s) / C(d+1, i+1).
inline Eigen::VectorXd brute_pi(const WeightedComplex& X, int i) {
  const int d = X.dimension();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(X.size(i)));
  const auto& top = X.faces(d);
  const Eigen::VectorXd& w = X.weights(d);
  for (std::size_t t = 0; t < X.size(i); ++t) {
    for (std::size_t s = 0; s < top.size(); ++s) {
      if (X.face(i, t).is_subset_of(top[s])) out[static_cast<Eigen::Index>(t)] += w[static_cast<Eigen::Index>(s)];
    }
  }
  return out / binom(d + 1, i + 1);
}

// U_i as a dense |X(i+1)| x |X(i)| matrix: 1/(i+2) on containment.
inline Eigen::MatrixXd brute_up(const WeightedComplex& X, int i) {
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(X.size(i + 1)),
                                            static_cast<Eigen::Index>(X.size(i)));
  for (std::size_t s = 0; s < X.size(i + 1); ++s) {
    for (std::size_t t = 0; t < X.size(i); ++t) {
      if (X.face(i, t).is_subset_of(X.face(i + 1, s))) U(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = 1.0 / (i + 2);
    }
  }
  return U;
}

// D_{i+1}: (Df)(t) = sum_{s > t} Pi_{i+1}(s) f(s) / sum_{s > t} Pi_{i+1}(s).
inline Eigen::MatrixXd brute_down(const WeightedComplex& X, int upper) {
  const int i = upper - 1;
  const Eigen::VectorXd pu = brute_pi(X, upper);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(X.size(i)),
                                            static_cast<Eigen::Index>(X.size(upper)));
  for (std::size_t t = 0; t < X.size(i); ++t) {
    double mass = 0.0;
    for (std::size_t s = 0; s < X.size(upper); ++s) {
      if (X.face(i, t).is_subset_of(X.face(upper, s))) {
        D(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = pu[static_cast<Eigen::Index>(s)];
        mass += pu[static_cast<Eigen::Index>(s)];
      }
    }
    D.row(static_cast<Eigen::Index>(t)) /= mass;
  }
  return D;
}

// Eigenvalues (ascending) of a Pi-reversible matrix via Pi^{1/2} M Pi^{-1/2}.
inline Eigen::VectorXd sym_spectrum(const Eigen::MatrixXd& M, const Eigen::VectorXd& pi) {
  const Eigen::VectorXd r = pi.cwiseSqrt();
  Eigen::MatrixXd S = r.asDiagonal() * M * r.cwiseInverse().asDiagonal();
  S = 0.5 * (S + S.transpose());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S, Eigen::EigenvaluesOnly).eigenvalues();
}

inline double sym_norm(const Eigen::MatrixXd& M, const Eigen::VectorXd& pi) {
  const Eigen::VectorXd ev = sym_spectrum(M, pi);
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

// lambda(A_s) straight from the link definition: edges {x,y} with s+x+y in
// X(i+2), weighted by Pi_{i+2}; vertex weights are the edge marginals.
inline double brute_link_lambda(const WeightedComplex& X, const Face& s) {
  const int i = s.dimension();
  const Eigen::VectorXd p2 = brute_pi(X, i + 2);
  std::vector<Vertex> verts;
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  for (std::size_t r = 0; r < X.size(i + 2); ++r) {
    const Face& f = X.face(i + 2, r);
    if (!s.is_subset_of(f)) continue;
    const Face e = f.minus(s);
    edges.emplace_back(e[0], e[1], p2[static_cast<Eigen::Index>(r)]);
    verts.push_back(e[0]);
    verts.push_back(e[1]);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const auto idx = [&](Vertex v) { return std::lower_bound(verts.begin(), verts.end(), v) - verts.begin(); };
  const auto m = static_cast<Eigen::Index>(verts.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, m);
  for (auto [a, b, w] : edges) {
    W(idx(a), idx(b)) += w;
    W(idx(b), idx(a)) += w;
  }
  const Eigen::VectorXd deg = W.rowwise().sum();
  const Eigen::MatrixXd A = deg.cwiseInverse().asDiagonal() * W;
  const Eigen::VectorXd ev = sym_spectrum(A, deg / deg.sum());
  return std::max(std::abs(ev[0]), std::abs(ev[m - 2]));
}

// Random pure complex: `faces` distinct (d+1)-subsets of [n].
inline WeightedComplex random_complex(int n, int d, int faces, std::uint64_t seed, bool weighted) {
  std::mt19937_64 rng(seed);
  std::set<std::vector<Vertex>> chosen;
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Vertex{0});
  const double cap = binom(n, d + 1);
  const auto want = static_cast<std::size_t>(std::min<double>(faces, cap));
  while (chosen.size() < want) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Vertex> f(all.begin(), all.begin() + d + 1);
    std::sort(f.begin(), f.end());
    chosen.insert(f);
  }
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::vector<Face> top;
  std::vector<double> w;
  for (const auto& f : chosen) {
    top.emplace_back(f);
    w.push_back(weighted ? u(rng) : 1.0);
  }
  return WeightedComplex::from_top_faces(std::move(top), std::move(w));
}

inline WeightedComplex two_triangles() {
  return WeightedComplex::from_top_faces({Face{0, 1, 2}, Face{2, 3, 4}}, {0.75, 0.25});
}

inline WeightedComplex disjoint_triangles() {
  return WeightedComplex::from_top_faces({Face{0, 1, 2}, Face{3, 4, 5}}, {1.0, 1.0});
}

inline WeightedComplex four_cycle() {
  return WeightedComplex::from_top_faces({Face{0, 1}, Face{1, 2}, Face{2, 3}, Face{0, 3}},
                                         {1.0, 1.0, 1.0, 1.0});
}

// Boundary of the octahedron; independent pairs are the antipodes {0,5},{1,4},{2,3}.
inline WeightedComplex octahedron() {
  std::vector<Face> top;
  const Vertex a[2] = {0, 5}, b[2] = {1, 4}, c[2] = {2, 3};
  for (Vertex x : a)
    for (Vertex y : b)
      for (Vertex z : c) top.push_back(Face::from_unsorted({x, y, z}));
  return WeightedComplex::from_top_faces(top, std::vector<double>(top.size(), 1.0));
}

// All triangles of [6] except those containing both 0 and 3, so that {0,3}
// is an independent pair.
inline WeightedComplex punctured_k6() {
  std::vector<Face> top;
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = a + 1; b < 6; ++b)
      for (Vertex c = b + 1; c < 6; ++c) {
        const Face f{a, b, c};
        if (!(f.contains(0) && f.contains(3))) top.push_back(f);
      }
  return WeightedComplex::from_top_faces(top, std::vector<double>(top.size(), 1.0));
}

// Number of k-dimensional subspaces of GF(p)^n for prime p: ordered
// independent k-tuples divided by ordered bases of one k-space.
inline std::uint64_t count_subspaces(int p, int n, int k) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(p);
  auto rank_mod_p = [&](std::vector<std::vector<int>> M) {
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(M.size()); ++c) {
      int piv = -1;
      for (int i = r; i < static_cast<int>(M.size()); ++i)
        if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] % p) piv = i;
      if (piv < 0) continue;
      std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(r)]);
      int inv = 1;
      while ((inv * M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) % p != 1) ++inv;
      for (auto& x : M[static_cast<std::size_t>(r)]) x = (x * inv) % p;
      for (int i = 0; i < static_cast<int>(M.size()); ++i) {
        if (i == r) continue;
        const int f = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        for (int j = 0; j < n; ++j) {
          auto& x = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          x = ((x - f * M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) % p + p) % p;
        }
      }
      ++r;
    }
    return r;
  };
  auto vec = [&](std::uint64_t code) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      v[static_cast<std::size_t>(j)] = static_cast<int>(code % static_cast<std::uint64_t>(p));
      code /= static_cast<std::uint64_t>(p);
    }
    return v;
  };
  std::uint64_t tuples = 0;
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(k), 0);
  std::uint64_t combos = 1;
  for (int i = 0; i < k; ++i) combos *= total;
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t x = c;
    std::vector<std::vector<int>> M;
    for (int i = 0; i < k; ++i) {
      M.push_back(vec(x % total));
      x /= total;
    }
    if (rank_mod_p(M) == k) ++tuples;
  }
  std::uint64_t bases = 1, pk = 1;
  for (int i = 0; i < k; ++i) pk *= static_cast<std::uint64_t>(p);
  std::uint64_t pi = 1;
  for (int i = 0; i < k; ++i) {
    bases *= pk - pi;
    pi *= static_cast<std::uint64_t>(p);
  }
  return tuples / bases;
}

inline double pi_norm2(const Eigen::VectorXd& f, const Eigen::VectorXd& pi) {
  return (pi.array() * f.array().square()).sum();
}

inline double pi_dot(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Eigen::VectorXd& pi) {
  return (pi.array() * f.array() * g.array()).sum();
}

// Boolean functions in span{y_v} on X(level), found by checking each 0/1
// vector for membership with a rank test. Only for tiny levels.
inline std::vector<std::uint64_t> brute_degree_one_masks(const WeightedComplex& X, int level) {
  const auto N = static_cast<Eigen::Index>(X.size(level));
  const auto V = static_cast<Eigen::Index>(X.size(0));
  Eigen::MatrixXd Y(N, V);
  for (Eigen::Index v = 0; v < V; ++v) {
    for (Eigen::Index t = 0; t < N; ++t) {
      Y(t, v) = X.face(level, static_cast<std::size_t>(t)).contains(X.face(0, static_cast<std::size_t>(v))[0]) ? 1.0 : 0.0;
    }
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> base(Y);
  const auto r0 = base.rank();
  std::vector<std::uint64_t> out;
  Eigen::MatrixXd A(N, V + 1);
  A.leftCols(V) = Y;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << N); ++m) {
    for (Eigen::Index t = 0; t < N; ++t) A(t, V) = (m >> t) & 1u ? 1.0 : 0.0;
    if (Eigen::FullPivLU<Eigen::MatrixXd>(A).rank() == r0) out.push_back(m);
  }
  return out;
}

}  // namespace oracle
