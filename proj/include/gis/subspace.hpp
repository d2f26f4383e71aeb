#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace gis {

// Ambient vector spaces are GF(q)^{n+1} with n <= 7.
inline constexpr int kMaxAmbient = 8;

/// Dense row-major matrix over a small field. Scratch type for elimination.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(std::size_t(rows) * std::size_t(cols), 0) {}

  Matrix(std::initializer_list<std::initializer_list<int>> init) {
    rows_ = int(init.size());
    cols_ = rows_ ? int(init.begin()->size()) : 0;
    data_.reserve(std::size_t(rows_) * std::size_t(cols_));
    for (const auto& r : init) {
      if (int(r.size()) != cols_)
        throw InvalidArgs("ragged matrix literal");
      for (int v : r) {
        if (v < 0 || v > 255)
          throw InvalidArgs("matrix entry out of range");
        data_.push_back(Element(v));
      }
    }
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Element& operator()(int r, int c) noexcept { return data_[std::size_t(r * cols_ + c)]; }
  Element operator()(int r, int c) const noexcept { return data_[std::size_t(r * cols_ + c)]; }

  std::span<Element> row(int r) noexcept {
    return {data_.data() + std::size_t(r * cols_), std::size_t(cols_)};
  }
  std::span<const Element> row(int r) const noexcept {
    return {data_.data() + std::size_t(r * cols_), std::size_t(cols_)};
  }

  void append_row(std::span<const Element> r) {
    if (rows_ == 0 && cols_ == 0)
      cols_ = int(r.size());
    if (int(r.size()) != cols_)
      throw DimensionMismatch("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void truncate_rows(int r) {
    rows_ = r;
    data_.resize(std::size_t(rows_) * std::size_t(cols_));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Element> data_;
};

/// Gauss-Jordan elimination in place. On return the first `rank` rows hold the
/// reduced row-echelon form and the remaining rows are zero. Returns the rank.
inline int reduce(Matrix& m, const Field& f) {
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0)
      continue;
    if (piv != rank)
      for (int k = 0; k < m.cols(); ++k)
        std::swap(m(piv, k), m(rank, k));
    const Element s = f.inv(m(rank, c));
    for (int k = c; k < m.cols(); ++k)
      m(rank, k) = f.mul(m(rank, k), s);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0)
        continue;
      const Element t = m(r, c);
      for (int k = c; k < m.cols(); ++k)
        m(r, k) = f.sub(m(r, k), f.mul(t, m(rank, k)));
    }
    ++rank;
  }
  return rank;
}

inline int rank(Matrix m, const Field& f) { return reduce(m, f); }

/// A projective subspace, held as the unique reduced row-echelon basis of the
/// underlying vector subspace. Two Subspaces are equal iff their matrices are
/// identical, and ordering is lexicographic on the flattened matrix.
class Subspace {
public:
  Subspace() = default;

  /// Adopts `m` without checking; `m` must already be in RREF with full rank.
  static Subspace from_rref(const Matrix& m) {
    if (m.rows() < 1 || m.cols() > kMaxAmbient || m.rows() > m.cols())
      throw InvalidArgs("subspace shape out of range");
    Subspace s;
    s.rows_ = std::uint8_t(m.rows());
    s.cols_ = std::uint8_t(m.cols());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        s.e_[std::size_t(r * m.cols() + c)] = m(r, c);
    return s;
  }

  int dim() const noexcept { return rows_; }          // vector dimension
  int projdim() const noexcept { return rows_ - 1; }  // projective dimension
  int ambient() const noexcept { return cols_; }      // n+1

  Element at(int r, int c) const noexcept { return e_[std::size_t(r * cols_ + c)]; }

  std::span<const Element> row(int r) const noexcept {
    return {e_.data() + std::size_t(r * cols_), std::size_t(cols_)};
  }

  std::span<const Element> entries() const noexcept {
    return {e_.data(), std::size_t(rows_) * cols_};
  }

  Matrix matrix() const {
    Matrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        m(r, c) = at(r, c);
    return m;
  }

  /// Column index of the leading 1 in row r.
  int pivot(int r) const noexcept {
    for (int c = 0; c < cols_; ++c)
      if (at(r, c) != 0)
        return c;
    return -1;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           std::ranges::equal(a.entries(), b.entries());
  }

  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) noexcept {
    if (auto c = a.rows_ <=> b.rows_; c != 0)
      return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0)
      return c;
    return std::lexicographical_compare_three_way(a.entries().begin(), a.entries().end(),
                                                  b.entries().begin(), b.entries().end());
  }

private:
  std::uint8_t rows_ = 0;
  std::uint8_t cols_ = 0;
  std::array<Element, kMaxAmbient * kMaxAmbient> e_{};
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept {
    auto e = s.entries();
    std::string_view bytes(reinterpret_cast<const char*>(e.data()), e.size());
    return std::hash<std::string_view>{}(bytes) ^ (std::size_t(s.dim()) << 1);
  }
};

/// Canonical basis of the row space of `rows`.
inline Subspace rref(Matrix rows, const Field& f) {
  for (int r = 0; r < rows.rows(); ++r)
    for (Element v : rows.row(r))
      if (!f.valid(v))
        throw InvalidArgs("matrix entry " + std::to_string(int(v)) +
                          " is not an element of GF(" + std::to_string(f.order()) + ")");
  const int rk = reduce(rows, f);
  if (rk == 0)
    throw ZeroSpace("row space is zero");
  rows.truncate_rows(rk);
  return Subspace::from_rref(rows);
}

/// True iff `m` is exactly in reduced row-echelon form with no zero rows.
inline bool is_rref(const Matrix& m) {
  int last = -1;
  for (int r = 0; r < m.rows(); ++r) {
    int p = -1;
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) {
        p = c;
        break;
      }
    if (p <= last || m(r, p) != 1)
      return false;
    for (int o = 0; o < m.rows(); ++o)
      if (o != r && m(o, p) != 0)
        return false;
    last = p;
  }
  return true;
}

inline Matrix stack(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw DimensionMismatch("subspaces live in different ambient spaces");
  Matrix m(a.dim() + b.dim(), a.ambient());
  for (int r = 0; r < a.dim(); ++r)
    std::ranges::copy(a.row(r), m.row(r).begin());
  for (int r = 0; r < b.dim(); ++r)
    std::ranges::copy(b.row(r), m.row(a.dim() + r).begin());
  return m;
}

inline Subspace span(const Subspace& a, const Subspace& b, const Field& f) {
  return rref(stack(a, b), f);
}

/// Vector dimension of a ∩ b, by the dimension formula.
inline int meet_dim(const Subspace& a, const Subspace& b, const Field& f) {
  return a.dim() + b.dim() - rank(stack(a, b), f);
}

/// Basis of {x : m x = 0}, i.e. the vectors orthogonal to every row of m.
/// Empty matrix (zero rows) when m has full column rank.
inline Matrix null_space(Matrix m, const Field& f) {
  const int rk = reduce(m, f);
  std::vector<int> pivots;
  for (int r = 0; r < rk; ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) {
        pivots.push_back(c);
        break;
      }
  Matrix out(0, m.cols());
  std::vector<Element> v(std::size_t(m.cols()));
  for (int free = 0; free < m.cols(); ++free) {
    if (std::ranges::find(pivots, free) != pivots.end())
      continue;
    std::ranges::fill(v, Element(0));
    v[std::size_t(free)] = 1;
    for (int r = 0; r < rk; ++r)
      v[std::size_t(pivots[std::size_t(r)])] = f.neg(m(r, free));
    out.append_row(v);
  }
  return out;
}

/// Orthogonal complement under the standard dot product; nullopt when `s` is
/// the whole space.
inline std::optional<Subspace> annihilator(const Subspace& s, const Field& f) {
  Matrix n = null_space(s.matrix(), f);
  if (n.rows() == 0)
    return std::nullopt;
  return rref(std::move(n), f);
}

/// Intersection of two subspaces; nullopt when it is trivial (empty
/// projectively).
inline std::optional<Subspace> meet(const Subspace& a, const Subspace& b, const Field& f) {
  if (a.ambient() != b.ambient())
    throw DimensionMismatch("subspaces live in different ambient spaces");
  Matrix normals = null_space(a.matrix(), f);
  Matrix nb = null_space(b.matrix(), f);
  for (int r = 0; r < nb.rows(); ++r)
    normals.append_row(nb.row(r));
  if (normals.rows() == 0)
    return a; // both are the whole space
  Matrix inter = null_space(std::move(normals), f);
  if (inter.rows() == 0)
    return std::nullopt;
  return rref(std::move(inter), f);
}

inline Element dot(std::span<const Element> u, std::span<const Element> v, const Field& f) {
  Element s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s = f.add(s, f.mul(u[i], v[i]));
  return s;
}

/// Calls visit(m) for every k x ambient matrix in RREF over GF(q), i.e. once
/// per subspace of vector dimension k: every set of k pivot columns with
/// every assignment of the free entries. Pattern order, not sorted.
template <class Visit>
void for_each_rref(int k, int ambient, const Field& f, Visit&& visit) {
  if (k < 1 || k > ambient || ambient > kMaxAmbient)
    throw InvalidArgs("enumerate_rref: need 1 <= k <= ambient <= 8");
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    piv[std::size_t(i)] = i;
  const int q = f.order();
  for (;;) {
    // free positions: row r, column c > piv[r], c not a pivot column
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r)
      for (int c = piv[std::size_t(r)] + 1; c < ambient; ++c)
        if (std::ranges::find(piv, c) == piv.end())
          free.emplace_back(r, c);
    Matrix m(k, ambient);
    for (int r = 0; r < k; ++r)
      m(r, piv[std::size_t(r)]) = 1;
    std::vector<int> digit(free.size(), 0);
    for (;;) {
      visit(std::as_const(m));
      std::size_t i = 0;
      for (; i < free.size(); ++i) {
        auto [r, c] = free[i];
        if (++digit[i] < q) {
          m(r, c) = Element(digit[i]);
          break;
        }
        digit[i] = 0;
        m(r, c) = 0;
      }
      if (i == free.size())
        break;
    }
    // next combination of pivot columns
    int i = k - 1;
    while (i >= 0 && piv[std::size_t(i)] == ambient - k + i)
      --i;
    if (i < 0)
      break;
    ++piv[std::size_t(i)];
    for (int j = i + 1; j < k; ++j)
      piv[std::size_t(j)] = piv[std::size_t(j - 1)] + 1;
  }
}

/// All subspaces of vector dimension k in GF(q)^ambient, in lexicographic
/// order of their RREF matrices.
inline std::vector<Subspace> enumerate_rref(int k, int ambient, const Field& f) {
  std::vector<Subspace> out;
  for_each_rref(k, ambient, f, [&](const Matrix& m) { out.push_back(Subspace::from_rref(m)); });
  std::ranges::sort(out);
  return out;
}

/// Image of the coefficient space `coeff` (RREF, coeff.ambient() == s.dim())
/// under the basis of `s`. Because both are in RREF the product already is.
inline Subspace compose(const Subspace& coeff, const Subspace& s, const Field& f) {
  Matrix m(coeff.dim(), s.ambient());
  for (int r = 0; r < coeff.dim(); ++r)
    for (int j = 0; j < coeff.ambient(); ++j) {
      const Element c = coeff.at(r, j);
      if (c == 0)
        continue;
      for (int col = 0; col < s.ambient(); ++col)
        m(r, col) = f.add(m(r, col), f.mul(c, s.at(j, col)));
    }
  return Subspace::from_rref(m);
}

} // namespace gis
