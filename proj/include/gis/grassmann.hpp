#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "counting.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "plane_set.hpp"

namespace gis {

/// Valency and the three non-trivial eigenvalues of the Grassmann graph of
/// planes of PG(n,q), with k > lambda1 > lambda2 > lambda3.
struct Spectrum {
  std::int64_t valency = 0;
  std::int64_t lambda1 = 0;
  std::int64_t lambda2 = 0;
  std::int64_t lambda3 = 0;

  std::array<std::int64_t, 3> nontrivial() const { return {lambda1, lambda2, lambda3}; }

  /// 1, 2 or 3 if `value` is that eigenvalue, otherwise 0.
  int index_of(std::int64_t value) const noexcept {
    if (value == lambda1)
      return 1;
    if (value == lambda2)
      return 2;
    if (value == lambda3)
      return 3;
    return 0;
  }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Eigenvalues of the Grassmann scheme J_q(n+1, 3):
///   lambda_j = q^{j+1} [3-j]_q [n-2-j]_q - [j]_q,   j = 0..3
/// where [m]_q = theta_{m-1}. j = 0 gives the valency theta_2 (theta_{n-2} - 1).
/// In closed form lambda_1 = q^2 (q+1)(q^{n-3}-1)/(q-1) - 1.
inline Spectrum spectrum(int n, int q) {
  if (n < 5)
    throw InvalidArgs("spectrum: need n >= 5, got " + std::to_string(n));
  if (q < 2)
    throw InvalidArgs("spectrum: need q >= 2");
  auto qint = [q](int m) { return theta(m - 1, q); }; // [m]_q
  auto eig = [&](int j) {
    return to_i64(ipow(BigInt(q), unsigned(j + 1)) * qint(3 - j) * qint(n - 2 - j) - qint(j));
  };
  return Spectrum{eig(0), eig(1), eig(2), eig(3)};
}

/// The Grassmann graph on the planes of a Geometry. Adjacency (meeting in a
/// line) is never materialized; degrees are aggregated through the
/// line-to-planes index.
class GrassmannGraph {
public:
  explicit GrassmannGraph(const Geometry& g) : geom_(&g), spec_(gis::spectrum(g.n(), g.q())) {}
  /// Classify against a caller-supplied spectrum instead of the computed one.
  GrassmannGraph(const Geometry& g, Spectrum spec) : geom_(&g), spec_(spec) {}

  const Geometry& geometry() const noexcept { return *geom_; }
  const Spectrum& spectrum() const noexcept { return spec_; }
  std::int64_t valency() const noexcept { return spec_.valency; }

  /// Number of planes of `set` other than `plane` meeting `plane` in a line.
  /// Two distinct planes share at most one line, so summing over the lines
  /// of `plane` counts each neighbour once.
  int degree_into(Index plane, const PlaneSet& set) const {
    if (plane < 0 || std::size_t(plane) >= geom_->plane_count())
      throw IndexOutOfRange("plane index " + std::to_string(plane) + " out of range");
    if (&set.geometry() != geom_)
      throw DimensionMismatch("plane set belongs to a different geometry");
    const int self = set.test(plane) ? 1 : 0;
    int d = 0;
    for (Index l : geom_->plane_lines(plane)) {
      int on_line = 0;
      for (Index t : geom_->line_planes(l))
        on_line += set.test(t) ? 1 : 0;
      d += on_line - self;
    }
    return d;
  }

  /// degree_into for every plane at once: one counting pass over the set,
  /// then theta_2 lookups per plane.
  std::vector<int> degrees(const PlaneSet& set) const {
    if (&set.geometry() != geom_)
      throw DimensionMismatch("plane set belongs to a different geometry");
    const std::vector<int> counts = line_counts(set);
    std::vector<int> out(geom_->plane_count());
    parallel_for(out.size(), geom_->threads(), [&](std::size_t b, std::size_t e) {
      for (std::size_t p = b; p < e; ++p) {
        const int self = set.test(Index(p)) ? 1 : 0;
        int d = 0;
        for (Index l : geom_->plane_lines(Index(p)))
          d += counts[std::size_t(l)] - self;
        out[p] = d;
      }
    });
    return out;
  }

private:
  const Geometry* geom_;
  Spectrum spec_;
};

} // namespace gis
