#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace gis {

// Field element. Encodes the polynomial c_0 + c_1 x + ... + c_{e-1} x^{e-1}
// over GF(p) as the integer sum c_i p^i (constant term least significant).
// This encoding is what appears in subspace files, so it must not change.
using Element = std::uint8_t;

/// Arithmetic in GF(q) for prime powers q <= 16.
///
/// Extension fields use a fixed irreducible polynomial per order:
/// GF(4) x^2+x+1, GF(8) x^3+x+1, GF(9) x^2+1, GF(16) x^4+x+1. All operations
/// are table lookups into q-by-q tables built once in the constructor; the
/// object is immutable afterwards.
class Field {
public:
  static constexpr int kMaxOrder = 16;

  explicit Field(int q) : q_(q) {
    if (q < 2 || q > kMaxOrder)
      throw NotPrimePower("unsupported field order " + std::to_string(q) +
                          " (need a prime power 2 <= q <= 16)");
    int p = smallest_prime_factor(q);
    int e = 0;
    for (int r = q; r > 1; r /= p) {
      if (r % p != 0)
        throw NotPrimePower(std::to_string(q) + " is not a prime power");
      ++e;
    }
    p_ = p;
    e_ = e;
    irreducible_ = irreducible_for(q);
    build_tables();
  }

  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return e_; }

  /// Coefficients of the defining monic polynomial, constant term first.
  /// Prime fields report the linear polynomial x.
  const std::vector<int>& irreducible() const noexcept { return irreducible_; }

  Element add(Element a, Element b) const noexcept { return add_[idx(a, b)]; }
  Element sub(Element a, Element b) const noexcept { return add_[idx(a, neg_[b])]; }
  Element mul(Element a, Element b) const noexcept { return mul_[idx(a, b)]; }
  Element neg(Element a) const noexcept { return neg_[a]; }

  Element inv(Element a) const {
    if (a == 0)
      throw DivideByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
  }

  Element pow(Element a, unsigned k) const noexcept {
    Element r = 1;
    for (; k; k >>= 1) {
      if (k & 1u)
        r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }

  bool valid(int a) const noexcept { return a >= 0 && a < q_; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.q_ == b.q_;
  }

private:
  static int smallest_prime_factor(int q) {
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0)
        return d;
    return q;
  }

  static std::vector<int> irreducible_for(int q) {
    switch (q) {
    case 4:
      return {1, 1, 1};
    case 8:
      return {1, 1, 0, 1};
    case 9:
      return {1, 0, 1};
    case 16:
      return {1, 1, 0, 0, 1};
    default:
      return {0, 1};
    }
  }

  std::size_t idx(Element a, Element b) const noexcept {
    return static_cast<std::size_t>(a) * kMaxOrder + b;
  }

  std::vector<int> digits(int a) const {
    std::vector<int> d(static_cast<std::size_t>(e_));
    for (auto& c : d) {
      c = a % p_;
      a /= p_;
    }
    return d;
  }

  int encode(const std::vector<int>& d) const {
    int a = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it)
      a = a * p_ + *it;
    return a;
  }

  // Schoolbook product in GF(p)[x], then reduction by the monic modulus.
  int poly_mul(int a, int b) const {
    if (e_ == 1)
      return (a * b) % p_;
    auto da = digits(a), db = digits(b);
    std::vector<int> prod(static_cast<std::size_t>(2 * e_ - 1), 0);
    for (int i = 0; i < e_; ++i)
      for (int j = 0; j < e_; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (int deg = 2 * e_ - 2; deg >= e_; --deg) {
      int c = prod[deg];
      if (c == 0)
        continue;
      for (int i = 0; i <= e_; ++i) {
        auto& t = prod[deg - e_ + i];
        t = ((t - c * irreducible_[i]) % p_ + p_) % p_;
      }
    }
    prod.resize(static_cast<std::size_t>(e_));
    return encode(prod);
  }

  void build_tables() {
    add_.fill(0);
    mul_.fill(0);
    neg_.fill(0);
    inv_.fill(0);
    for (int a = 0; a < q_; ++a) {
      auto da = digits(a);
      for (int b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<int> s(da.size());
        for (std::size_t i = 0; i < s.size(); ++i)
          s[i] = (da[i] + db[i]) % p_;
        add_[idx(Element(a), Element(b))] = Element(encode(s));
        mul_[idx(Element(a), Element(b))] = Element(poly_mul(a, b));
      }
      std::vector<int> n(da.size());
      for (std::size_t i = 0; i < n.size(); ++i)
        n[i] = (p_ - da[i]) % p_;
      neg_[a] = Element(encode(n));
    }
    for (int a = 1; a < q_; ++a)
      for (int b = 1; b < q_; ++b)
        if (mul_[idx(Element(a), Element(b))] == 1)
          inv_[a] = Element(b);
  }

  int q_ = 0;
  int p_ = 0;
  int e_ = 0;
  std::vector<int> irreducible_;
  std::array<Element, kMaxOrder * kMaxOrder> add_{};
  std::array<Element, kMaxOrder * kMaxOrder> mul_{};
  std::array<Element, kMaxOrder> neg_{};
  std::array<Element, kMaxOrder> inv_{};
};

} // namespace gis
