#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "exact_cover.hpp"
#include "geometry.hpp"
#include "intriguing.hpp"
#include "plane_set.hpp"
#include "symplectic_group.hpp"

namespace gis {

/// Dual polar graph of W(5,q): vertices are the totally isotropic planes,
/// adjacent when they meet in a line.
class DualPolarGraph {
public:
  explicit DualPolarGraph(const Geometry& g) : geom_(&g) {
    auto [sp, planes] = symplectic_w5(g);
    symplectic_ = std::move(sp);
    vertices_ = planes.indexes();
    vertex_of_.assign(g.plane_count(), -1);
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      vertex_of_[std::size_t(vertices_[v])] = Index(v);

    ti_on_line_.assign(g.lines().size(), 0);
    for (std::size_t l = 0; l < g.lines().size(); ++l) {
      if (!symplectic_.totally_isotropic(g.lines()[l]))
        continue;
      ti_lines_.push_back(Index(l));
      for (Index p : g.line_planes(Index(l)))
        ti_on_line_[l] += vertex_of_[std::size_t(p)] >= 0 ? 1 : 0;
    }
    const int q = g.q();
    for (Index l : ti_lines_)
      if (ti_on_line_[std::size_t(l)] != q + 1)
        throw std::logic_error("dual polar: a totally isotropic line is not on q+1 t.i. planes");

    degree_ = -1;
    for (Index v : vertices_) {
      int d = 0;
      for (Index l : g.plane_lines(v))
        d += ti_on_line_[std::size_t(l)] - 1;
      if (degree_ < 0)
        degree_ = d;
      else if (d != degree_)
        throw std::logic_error("dual polar graph is not regular");
    }
  }

  const Geometry& geometry() const noexcept { return *geom_; }
  const SymplecticSpace& symplectic() const noexcept { return symplectic_; }
  const std::vector<Index>& vertices() const noexcept { return vertices_; }
  /// Position of `plane` among the vertices, -1 if not totally isotropic.
  Index vertex_of(Index plane) const { return vertex_of_.at(std::size_t(plane)); }
  bool is_vertex(Index plane) const { return vertex_of(plane) >= 0; }
  const std::vector<Index>& ti_lines() const noexcept { return ti_lines_; }
  int degree() const noexcept { return degree_; }
  /// k, q^2+q-1, -1, -(q^2+q+1).
  Spectrum spectrum() const {
    const std::int64_t q = geom_->q();
    return Spectrum{degree_, q * q + q - 1, -1, -(q * q + q + 1)};
  }

  /// Totally isotropic planes on a line (0 if the line is not t.i.).
  int ti_planes_on(Index line) const { return ti_on_line_.at(std::size_t(line)); }

private:
  const Geometry* geom_;
  SymplecticSpace symplectic_;
  std::vector<Index> vertices_;
  std::vector<Index> vertex_of_;
  std::vector<Index> ti_lines_;
  std::vector<int> ti_on_line_;
  int degree_ = 0;
};

inline DualPolarGraph build_dual_polar(const Geometry& g) { return DualPolarGraph(g); }

struct DualPolarCertificate {
  int q = 0;
  std::size_t size = 0;
  std::size_t vertex_count = 0;
  int degree = 0;
  Spectrum spectrum;
  Verdict verdict;
  std::int64_t expected_difference = -1;
  bool matches_expected = false;      // intriguing with x' - x = -1
  bool size_matches_spread = false;   // |L| = (q^4+q^2+1)(q+1)

  const Intriguing* intriguing() const noexcept { return std::get_if<Intriguing>(&verdict); }
};

/// Degree constancy for a vertex subset of the dual polar graph. A vertex v
/// meets in a line exactly the t.i. planes on its lines, all of which are
/// t.i., so counts come from the geometry's line index restricted to `set`.
inline DualPolarCertificate dp_verify(const DualPolarGraph& dp, const PlaneSet& set) {
  const Geometry& g = dp.geometry();
  if (&set.geometry() != &g)
    throw DimensionMismatch("plane set belongs to a different geometry");
  for (Index p : set.indexes())
    if (!dp.is_vertex(p))
      throw InvalidArgs("plane " + std::to_string(p) + " is not totally isotropic");
  if (set.empty() || set.size() == dp.vertices().size())
    throw TrivialSet(set.empty() ? "empty vertex set" : "vertex set contains every vertex");

  const auto counts = line_counts(set);
  const auto& vs = dp.vertices();
  std::vector<int> deg(vs.size());
  std::vector<bool> member(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    member[i] = set.test(vs[i]);
    int d = 0;
    for (Index l : g.plane_lines(vs[i]))
      d += counts[std::size_t(l)] - (member[i] ? 1 : 0);
    deg[i] = d;
  }

  DualPolarCertificate c;
  const int q = g.q();
  c.q = q;
  c.size = set.size();
  c.vertex_count = vs.size();
  c.degree = dp.degree();
  c.spectrum = dp.spectrum();
  c.verdict = detail::classify_degrees(deg, member, vs);
  if (auto* in = std::get_if<Intriguing>(&c.verdict)) {
    in->eigenvalue_index = c.spectrum.index_of(in->eigenvalue());
    in->tight = in->eigenvalue_index == 1 || in->eigenvalue_index == 3;
  }
  c.matches_expected = c.intriguing() && c.intriguing()->eigenvalue() == c.expected_difference;
  c.size_matches_spread = BigInt(c.size) == BigInt(q * q * q * q + q * q + 1) * (q + 1);
  return c;
}

/// Lines of W(5,q) covering every point exactly once.
struct W5LineSpread {
  std::vector<Index> lines;
};

/// Empty if valid, else the reason.
inline std::string w5_spread_defect(const DualPolarGraph& dp, const W5LineSpread& s) {
  const Geometry& g = dp.geometry();
  for (Index l : s.lines) {
    if (l < 0 || std::size_t(l) >= g.lines().size())
      return "line index " + std::to_string(l) + " out of range";
    if (dp.ti_planes_on(l) == 0)
      return "line " + std::to_string(l) + " is not totally isotropic";
  }
  return spread_defect(g, s.lines);
}

/// All vertices containing a spread line; (q+1) per line, no overlaps.
inline PlaneSet dp_spread_planes(const DualPolarGraph& dp, const W5LineSpread& s) {
  if (auto why = w5_spread_defect(dp, s); !why.empty())
    throw InvalidSpread("not a line spread of W(5,q): " + why);
  const Geometry& g = dp.geometry();
  PlaneSet out(g);
  for (Index l : s.lines)
    for (Index p : g.line_planes(l))
      if (dp.is_vertex(p))
        out.insert(p);
  return out;
}

enum class SearchStatus { Found, Exhausted, Timeout };

inline const char* to_string(SearchStatus s) {
  switch (s) {
  case SearchStatus::Found:
    return "found";
  case SearchStatus::Exhausted:
    return "exhausted";
  case SearchStatus::Timeout:
    return "timeout";
  }
  return "?";
}

struct SpreadSearchResult {
  SearchStatus status = SearchStatus::Timeout;
  W5LineSpread spread;
  std::uint64_t nodes = 0;
  unsigned restarts = 0;
  double seconds = 0;
  /// Projective order of the symmetry the spread was found under; 1 when
  /// found by the unrestricted search, 0 when nothing was found.
  int symmetry_order = 0;
};

struct SpreadSearchOptions {
  std::uint64_t seed = 1;
  std::chrono::duration<double> budget = std::chrono::seconds(60);
  std::uint64_t first_node_limit = 20000;
  double limit_growth = 1.5;
  /// Share of the budget spent on the orbit-reduced phase.
  double symmetric_share = 0.25;
};

namespace detail {

struct CoverRun {
  ExactCover::Status status = ExactCover::Status::Aborted;
  std::vector<int> rows; // indexes into the caller's row list
};

/// Randomized restarts of the exact-cover solver: rows are shuffled and the
/// node limit grows geometrically until Found, Exhausted or the deadline.
inline CoverRun cover_with_restarts(int columns, const std::vector<std::vector<int>>& base_rows,
                                    std::mt19937_64& rng, ExactCover::Clock::time_point deadline,
                                    const SpreadSearchOptions& opts, SpreadSearchResult& stats) {
  CoverRun out;
  double limit = double(opts.first_node_limit);
  std::vector<int> order(base_rows.size());
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::ranges::shuffle(order, rng);
    std::vector<std::vector<int>> rows;
    rows.reserve(order.size());
    for (int r : order)
      rows.push_back(base_rows[std::size_t(r)]);
    ExactCover solver(columns, rows);
    std::vector<int> chosen;
    out.status = solver.solve(rng, std::uint64_t(limit), deadline, chosen);
    stats.nodes += solver.nodes_visited();
    if (out.status == ExactCover::Status::Found) {
      for (int r : chosen)
        out.rows.push_back(order[std::size_t(r)]);
      return out;
    }
    if (out.status == ExactCover::Status::Exhausted || ExactCover::Clock::now() >= deadline)
      return out;
    ++stats.restarts;
    limit *= opts.limit_growth;
  }
}

inline int largest_prime_factor(int m) {
  int best = 1;
  for (int p = 2; p * p <= m; ++p)
    while (m % p == 0) {
      best = p;
      m /= p;
    }
  return m > 1 ? m : best;
}

} // namespace detail

/// Exact-cover search for a line spread of W(5,q): the universe is the
/// theta_5 points and each t.i. line is a candidate set of q+1 points.
///
/// Two phases, both dancing links with random MRV tie-breaks and restarts:
///  1. Orbit-reduced: a random symplectic element of prime order r dividing
///     q^2-q+1 is drawn from the seed; candidates are its orbits of pairwise
///     skew t.i. lines, so only spreads invariant under it are searched.
///  2. Unrestricted over single lines for the rest of the budget.
/// Exhausted is reported only by phase 2 and proves no spread exists.
/// Results are deterministic per seed up to where the time budget cuts in.
inline SpreadSearchResult search_w5_spread(const DualPolarGraph& dp, SpreadSearchOptions opts = {}) {
  using Clock = ExactCover::Clock;
  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(opts.budget);
  const Geometry& g = dp.geometry();
  const int q = g.q();
  const int columns = int(g.points().size());

  SpreadSearchResult out;
  std::mt19937_64 rng(opts.seed);
  auto finish = [&](std::vector<Index> lines, SearchStatus st, int sym) {
    out.status = st;
    out.symmetry_order = sym;
    std::ranges::sort(lines);
    out.spread.lines = std::move(lines);
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (st == SearchStatus::Found && !w5_spread_defect(dp, out.spread).empty())
      throw std::logic_error("exact cover returned an invalid spread");
    return out;
  };

  const int r = detail::largest_prime_factor(q * q - q + 1);
  if (r > 1 && opts.symmetric_share > 0) {
    const auto phase_end =
        start + std::chrono::duration_cast<Clock::duration>(opts.budget * opts.symmetric_share);
    if (auto elt = random_symplectic_of_order(dp.symplectic(), r, rng)) {
      const auto line_img = act_on_lines(g, *elt);
      std::vector<bool> is_ti(g.lines().size(), false);
      for (Index l : dp.ti_lines())
        is_ti[std::size_t(l)] = true;
      std::vector<std::vector<Index>> orbits;
      std::vector<std::vector<int>> rows;
      for (auto& orbit : cycles(line_img)) {
        if (!is_ti[std::size_t(orbit.front())])
          continue;
        std::vector<int> pts;
        for (Index l : orbit)
          for (Index p : g.line_points(l))
            pts.push_back(p);
        std::ranges::sort(pts);
        if (std::ranges::adjacent_find(pts) != pts.end())
          continue; // lines of the orbit meet
        orbits.push_back(std::move(orbit));
        rows.push_back(std::move(pts));
      }
      auto run = detail::cover_with_restarts(columns, rows, rng, std::min(phase_end, deadline), opts, out);
      if (run.status == ExactCover::Status::Found) {
        std::vector<Index> lines;
        for (int i : run.rows)
          lines.insert(lines.end(), orbits[std::size_t(i)].begin(), orbits[std::size_t(i)].end());
        return finish(std::move(lines), SearchStatus::Found, r);
      }
    }
  }

  std::vector<std::vector<int>> rows;
  rows.reserve(dp.ti_lines().size());
  for (Index l : dp.ti_lines()) {
    auto pts = g.line_points(l);
    rows.emplace_back(pts.begin(), pts.end());
  }
  auto run = detail::cover_with_restarts(columns, rows, rng, deadline, opts, out);
  if (run.status == ExactCover::Status::Found) {
    std::vector<Index> lines;
    for (int i : run.rows)
      lines.push_back(dp.ti_lines()[std::size_t(i)]);
    return finish(std::move(lines), SearchStatus::Found, 1);
  }
  return finish({}, run.status == ExactCover::Status::Exhausted ? SearchStatus::Exhausted
                                                                : SearchStatus::Timeout, 0);
}

} // namespace gis
