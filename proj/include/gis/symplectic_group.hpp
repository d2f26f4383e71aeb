#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "constructions.hpp"
#include "geometry.hpp"

namespace gis {

// Matrices act on row vectors from the right: x -> x M.

inline Matrix identity_matrix(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b, const Field& f) {
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Element s = a(i, k);
      if (s == 0)
        continue;
      for (int j = 0; j < b.cols(); ++j)
        c(i, j) = f.add(c(i, j), f.mul(s, b(k, j)));
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

/// M preserves the form with Gram matrix J iff M J M^T = J.
inline bool preserves_form(const Matrix& m, const SymplecticSpace& sp) {
  const Field& f = sp.geometry->field();
  return multiply(multiply(m, sp.gram, f), transpose(m), f) == sp.gram;
}

/// Symplectic transvection x -> x + a B(x, v) v.
inline Matrix transvection(const SymplecticSpace& sp, std::span<const Element> v, Element a) {
  const Field& f = sp.geometry->field();
  const int n = sp.gram.rows();
  Matrix t = identity_matrix(n);
  for (int i = 0; i < n; ++i) {
    // (J v^T)_i
    Element jv = 0;
    for (int k = 0; k < n; ++k)
      jv = f.add(jv, f.mul(sp.gram(i, k), v[std::size_t(k)]));
    for (int j = 0; j < n; ++j)
      t(i, j) = f.add(t(i, j), f.mul(a, f.mul(jv, v[std::size_t(j)])));
  }
  return t;
}

/// True iff m is a nonzero scalar multiple of the identity.
inline bool is_scalar(const Matrix& m) {
  const Element s = m(0, 0);
  if (s == 0)
    return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? s : 0))
        return false;
  return true;
}

/// Order of m acting on projective points, or 0 if above `cap`.
inline int projective_order(const Matrix& m, const Field& f, int cap = 4096) {
  Matrix p = m;
  for (int k = 1; k <= cap; ++k) {
    if (is_scalar(p))
      return k;
    p = multiply(p, m, f);
  }
  return 0;
}

inline Matrix matrix_power(Matrix m, unsigned k, const Field& f) {
  Matrix r = identity_matrix(m.rows());
  for (; k; k >>= 1) {
    if (k & 1u)
      r = multiply(r, m, f);
    m = multiply(m, m, f);
  }
  return r;
}

/// A random element of Sp(6,q) (product of random transvections) raised to
/// the power that leaves projective order exactly `r`. nullopt if none of
/// `attempts` samples has order divisible by r.
inline std::optional<Matrix> random_symplectic_of_order(const SymplecticSpace& sp, int r,
                                                        std::mt19937_64& rng, int attempts = 500) {
  const Field& f = sp.geometry->field();
  const int q = f.order();
  const int n = sp.gram.rows();
  std::uniform_int_distribution<int> coord(0, q - 1), unit(1, q - 1);
  for (int t = 0; t < attempts; ++t) {
    Matrix m = identity_matrix(n);
    for (int k = 0; k < 4 * n * n; ++k) {
      std::vector<Element> v(static_cast<std::size_t>(n));
      bool nonzero = false;
      for (auto& x : v) {
        x = Element(coord(rng));
        nonzero |= x != 0;
      }
      if (!nonzero)
        continue;
      m = multiply(m, transvection(sp, v, Element(unit(rng))), f);
    }
    const int ord = projective_order(m, f);
    if (ord == 0 || ord % r != 0)
      continue;
    Matrix g = matrix_power(m, unsigned(ord / r), f);
    if (projective_order(g, f) == r && preserves_form(g, sp))
      return g;
  }
  return std::nullopt;
}

/// Image of each point (by index) under x -> x M.
inline std::vector<Index> act_on_points(const Geometry& g, const Matrix& m) {
  const Field& f = g.field();
  std::vector<Index> img(g.points().size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    Matrix row(1, g.n() + 1);
    std::ranges::copy(g.points()[i].row(0), row.row(0).begin());
    img[i] = g.index_of(rref(multiply(row, m, f), f));
  }
  return img;
}

/// Image of each line under x -> x M.
inline std::vector<Index> act_on_lines(const Geometry& g, const Matrix& m) {
  const Field& f = g.field();
  std::vector<Index> img(g.lines().size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = g.index_of(rref(multiply(g.lines()[i].matrix(), m, f), f));
  return img;
}

/// Orbits of the cyclic group generated by a permutation, each in discovery
/// order starting from its smallest element.
inline std::vector<std::vector<Index>> cycles(const std::vector<Index>& perm) {
  std::vector<std::vector<Index>> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s])
      continue;
    std::vector<Index> orbit;
    for (Index x = Index(s); !seen[std::size_t(x)]; x = perm[std::size_t(x)]) {
      seen[std::size_t(x)] = true;
      orbit.push_back(x);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

} // namespace gis
