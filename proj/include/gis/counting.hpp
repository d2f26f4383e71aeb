#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace gis {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

/// Gaussian coefficient [n choose k]_q: the number of k-dimensional subspaces
/// of an n-dimensional vector space over GF(q). Exact.
inline BigInt gauss_binom(int n, int k, int q) {
  if (k < 0 || k > n)
    throw InvalidArgs("gauss_binom: need 0 <= k <= n, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  if (q < 2)
    throw InvalidArgs("gauss_binom: need q >= 2");
  BigInt num = 1, den = 1;
  const BigInt bq = q;
  for (int i = 1; i <= k; ++i) {
    num *= ipow(bq, unsigned(n + 1 - i)) - 1;
    den *= ipow(bq, unsigned(i)) - 1;
  }
  return num / den;
}

/// theta_m = (q^{m+1}-1)/(q-1), the number of points of PG(m,q).
/// theta_{-1} = 0 so that formulas involving theta_{n-5} stay defined at n=4.
inline BigInt theta(int m, int q) {
  if (m < -1)
    throw InvalidArgs("theta: need m >= -1");
  if (q < 2)
    throw InvalidArgs("theta: need q >= 2");
  return (ipow(BigInt(q), unsigned(m + 1)) - 1) / (q - 1);
}

/// Narrowing conversion with a range check, for counts that index arrays.
inline std::int64_t to_i64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
    throw ResourceLimit("integer " + v.str() + " exceeds 64 bits");
  return v.convert_to<std::int64_t>();
}

} // namespace gis
