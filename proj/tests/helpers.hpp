#pragma once

#include <random>
#include <string>
#include <vector>

#include "shifteq/matrix.hpp"
#include "shifteq/quiver.hpp"

namespace testutil {

using namespace shifteq;

// The two-vertex example: one loop at each vertex and one arrow each way;
// incidence matrix is all ones.
inline Quiver quiver_A() {
  return Quiver({"1", "2"}, {Arrow{"a", "1", "1"},
                             Arrow{"b", "1", "2"},
                             Arrow{"c", "2", "1"},
                             Arrow{"d", "2", "2"}});
}

// Single vertex with two loops; incidence matrix (2).
inline Quiver quiver_B() {
  return Quiver({"1"}, {Arrow{"x", "1", "1"}, Arrow{"y", "1", "1"}});
}

// The three-arrow example: w a loop at 1, v from 1 to 2, u from 2 to 1.
// Arrow order (u, v, w) so matrices over that ordering come out directly.
inline Quiver quiver_51() {
  return Quiver({"1", "2"}, {Arrow{"u", "2", "1"},
                             Arrow{"v", "1", "2"},
                             Arrow{"w", "1", "1"}});
}

inline Quiver single_loop() {
  return Quiver({"1"}, {Arrow{"x", "1", "1"}});
}

// Deterministic random quiver with 1..max_v vertices and 0..max_a arrows.
// Arrow ids "a1", "a2", ... are prefix-free, so composition labels of
// distinct paths never collide.
inline Quiver random_quiver(std::mt19937_64& rng, std::size_t max_v,
                            std::size_t max_a) {
  const std::size_t nv = 1 + rng() % max_v;
  const std::size_t na = rng() % (max_a + 1);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < nv; ++i) vertices.push_back("v" + std::to_string(i + 1));
  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < na; ++a)
    arrows.push_back(Arrow{"a" + std::to_string(a + 1),
                           vertices[rng() % nv], vertices[rng() % nv]});
  return Quiver(std::move(vertices), std::move(arrows));
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = Int(lo + static_cast<long>(rng() % (hi - lo + 1)));
  return m;
}

// ---------------------------------------------------------------------------
// Independent polynomial-matrix oracle for characteristic polynomials:
// dense ascending coefficient vectors and cofactor expansion, nothing
// shared with the library implementation.

using Poly = std::vector<Int>;

inline Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(out);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(out);
}

inline Poly poly_scale(const Poly& a, const Int& s) {
  Poly out = a;
  for (Int& c : out) c *= s;
  return poly_trim(out);
}

// det of a polynomial matrix by first-row cofactor expansion.
inline Poly poly_det(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {Int(1)};
  if (n == 1) return m[0][0];
  Poly acc;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = poly_mul(m[0][j], poly_det(minor));
    if (j % 2 == 1) term = poly_scale(term, Int(-1));
    acc = poly_add(acc, term);
  }
  return acc;
}

// Coefficients of det(tI - A), ascending.
inline Poly charpoly_oracle(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        m[i][j] = poly_trim({-a(i, j), Int(1)});
      else
        m[i][j] = poly_trim({-a(i, j)});
    }
  return poly_det(m);
}

}  // namespace testutil
