#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "counting.hpp"
#include "geometry.hpp"
#include "plane_set.hpp"

namespace gis {

/// All planes through a point.
inline PlaneSet point_star(const Geometry& g, Index point) {
  if (point < 0 || std::size_t(point) >= g.points().size())
    throw IndexOutOfRange("point index " + std::to_string(point) + " out of range");
  return PlaneSet(g, g.point_planes(point));
}

/// All planes inside a hyperplane.
inline PlaneSet hyperplane_planes(const Geometry& g, Index hyperplane) {
  if (hyperplane < 0 || std::size_t(hyperplane) >= g.hyperplanes().size())
    throw IndexOutOfRange("hyperplane index " + std::to_string(hyperplane) + " out of range");
  return PlaneSet(g, g.hyperplane_planes(hyperplane));
}

enum class SpreadKind { Regular, Found, Loaded };

inline const char* to_string(SpreadKind k) {
  switch (k) {
  case SpreadKind::Regular:
    return "regular";
  case SpreadKind::Found:
    return "found";
  case SpreadKind::Loaded:
    return "loaded";
  }
  return "?";
}

/// A set of pairwise skew lines covering every point of PG(n,q).
struct LineSpread {
  const Geometry* geometry = nullptr;
  std::vector<Index> lines; // sorted line indexes
  SpreadKind kind = SpreadKind::Loaded;
};

/// Empty string if `lines` partitions the points of `g`, else the reason.
inline std::string spread_defect(const Geometry& g, const std::vector<Index>& lines) {
  std::vector<int> cover(g.points().size(), 0);
  for (Index l : lines) {
    if (l < 0 || std::size_t(l) >= g.lines().size())
      return "line index " + std::to_string(l) + " out of range";
    for (Index pt : g.line_points(l))
      if (++cover[std::size_t(pt)] > 1)
        return "point " + std::to_string(pt) + " covered twice";
  }
  for (std::size_t pt = 0; pt < cover.size(); ++pt)
    if (cover[pt] == 0)
      return "point " + std::to_string(pt) + " not covered";
  return {};
}

inline void validate(const LineSpread& s) {
  if (!s.geometry)
    throw InvalidSpread("spread has no geometry");
  if (auto why = spread_defect(*s.geometry, s.lines); !why.empty())
    throw InvalidSpread("not a line spread: " + why);
}

/// The regular (Desarguesian) line spread of PG(n,q), n odd. Coordinates
/// (x_{2i}, x_{2i+1}) are read as x_{2i} + x_{2i+1} w in GF(q^2) = GF(q)(w),
/// and every vector v gives the line <v, w v>: the GF(q)-points of one
/// GF(q^2)-point. w is a root of the first monic irreducible
/// t^2 - a t - b over GF(q) in (a, b) encoding order.
inline LineSpread regular_spread(const Geometry& g) {
  const int n = g.n();
  if (n % 2 == 0)
    throw OddRequired("a line spread of PG(" + std::to_string(n) + ",q) needs n odd");
  const Field& f = g.field();
  const int q = f.order();

  Element a = 0, b = 0;
  bool found = false;
  for (int ai = 0; ai < q && !found; ++ai)
    for (int bi = 1; bi < q && !found; ++bi) {
      bool root = false;
      for (int t = 0; t < q && !root; ++t) {
        const Element tt = Element(t);
        root = f.sub(f.sub(f.mul(tt, tt), f.mul(Element(ai), tt)), Element(bi)) == 0;
      }
      if (!root) {
        a = Element(ai);
        b = Element(bi);
        found = true;
      }
    }

  LineSpread s{&g, {}, SpreadKind::Regular};
  std::vector<bool> seen(g.lines().size(), false);
  for (const Subspace& pt : g.points()) {
    Matrix m(2, n + 1);
    for (int i = 0; i + 1 < n + 1; i += 2) {
      const Element c0 = pt.at(0, i), c1 = pt.at(0, i + 1);
      m(0, i) = c0;
      m(0, i + 1) = c1;
      // w (c0 + c1 w) = b c1 + (c0 + a c1) w
      m(1, i) = f.mul(b, c1);
      m(1, i + 1) = f.add(c0, f.mul(a, c1));
    }
    const Index l = g.index_of(rref(std::move(m), f));
    if (!seen[std::size_t(l)]) {
      seen[std::size_t(l)] = true;
      s.lines.push_back(l);
    }
  }
  std::ranges::sort(s.lines);
  validate(s);
  return s;
}

/// All planes containing a line of the spread. A plane holds at most one
/// spread line, so the result has |S| theta_{n-2} planes.
inline PlaneSet spread_planes(const LineSpread& s) {
  validate(s);
  PlaneSet out(*s.geometry);
  for (Index l : s.lines)
    for (Index p : s.geometry->line_planes(l))
      out.insert(p);
  return out;
}

/// The symplectic polar space W(5,q): the alternating form with hyperbolic
/// pairs on coordinates (0,1), (2,3), (4,5).
struct SymplecticSpace {
  const Geometry* geometry = nullptr;
  Matrix gram;

  Element form(std::span<const Element> u, std::span<const Element> v) const {
    const Field& f = geometry->field();
    Element s = 0;
    for (int i = 0; i < gram.rows(); ++i) {
      if (u[std::size_t(i)] == 0)
        continue;
      for (int j = 0; j < gram.cols(); ++j)
        if (gram(i, j) != 0)
          s = f.add(s, f.mul(u[std::size_t(i)], f.mul(gram(i, j), v[std::size_t(j)])));
    }
    return s;
  }

  /// Basis rows pairwise orthogonal; enough by bilinearity.
  bool totally_isotropic(const Subspace& sub) const {
    for (int i = 0; i < sub.dim(); ++i)
      for (int j = i + 1; j < sub.dim(); ++j)
        if (form(sub.row(i), sub.row(j)) != 0)
          return false;
    return true;
  }
};

inline SymplecticSpace standard_symplectic(const Geometry& g) {
  if (g.n() != 5)
    throw WrongDimension("W(5,q) needs n = 5, got n = " + std::to_string(g.n()));
  const Field& f = g.field();
  SymplecticSpace sp{&g, Matrix(6, 6)};
  for (int i = 0; i < 6; i += 2) {
    sp.gram(i, i + 1) = 1;
    sp.gram(i + 1, i) = f.neg(1);
  }
  return sp;
}

/// The totally isotropic planes of W(5,q), (q^3+1)(q^2+1)(q+1) of them.
inline std::pair<SymplecticSpace, PlaneSet> symplectic_w5(const Geometry& g) {
  SymplecticSpace sp = standard_symplectic(g);
  PlaneSet planes(g);
  for (std::size_t p = 0; p < g.plane_count(); ++p)
    if (sp.totally_isotropic(g.planes()[p]))
      planes.insert(Index(p));
  const int q = g.q();
  const BigInt want = BigInt(q * q * q + 1) * (q * q + 1) * (q + 1);
  if (BigInt(planes.size()) != want)
    throw std::logic_error("W(5,q): found " + std::to_string(planes.size()) +
                           " totally isotropic planes, expected " + want.str());
  return {std::move(sp), std::move(planes)};
}

} // namespace gis
