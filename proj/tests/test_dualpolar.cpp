#include <catch_amalgamated.hpp>

#include <random>

#include "gis/dualpolar.hpp"
#include "gis/symplectic_group.hpp"

using namespace gis;

namespace {

const Geometry& pg52() {
  static const Geometry g(5, 2);
  return g;
}
const Geometry& pg53() {
  static const Geometry g(5, 3);
  return g;
}

SpreadSearchOptions opts(std::uint64_t seed, double secs) {
  SpreadSearchOptions o;
  o.seed = seed;
  o.budget = std::chrono::duration<double>(secs);
  return o;
}

} // namespace

TEST_CASE("exact cover", "[dualpolar][exact-cover]") {
  // columns 0..6; the unique cover is rows {0, 3, 4}
  const std::vector<std::vector<int>> rows = {{2, 4, 5}, {0, 3, 6}, {1, 2, 5}, {0, 3}, {1, 6}, {3, 4, 6}};
  std::mt19937_64 rng(1);
  ExactCover solver(7, rows);
  std::vector<int> sol;
  REQUIRE(solver.solve(rng, 1000, ExactCover::Clock::now() + std::chrono::seconds(5), sol) ==
          ExactCover::Status::Found);
  std::ranges::sort(sol);
  CHECK(sol == std::vector<int>{0, 3, 4});

  ExactCover none(3, {{0, 1}, {1, 2}});
  CHECK(none.solve(rng, 1000, ExactCover::Clock::now() + std::chrono::seconds(5), sol) ==
        ExactCover::Status::Exhausted);

  // many solutions, but a limit of one node cannot reach any
  std::vector<std::vector<int>> singles;
  for (int c = 0; c < 10; ++c)
    singles.push_back({c});
  ExactCover limited(10, singles);
  CHECK(limited.solve(rng, 1, ExactCover::Clock::now() + std::chrono::seconds(5), sol) ==
        ExactCover::Status::Aborted);
}

TEST_CASE("dual polar graph of W(5,2)", "[dualpolar]") {
  const DualPolarGraph dp(pg52());
  CHECK(dp.vertices().size() == 135);
  CHECK(dp.degree() == 14);
  CHECK(dp.ti_lines().size() == 315);
  CHECK(PlaneSet(pg52(), dp.vertices()) == symplectic_w5(pg52()).second);
  for (Index l : dp.ti_lines())
    REQUIRE(dp.ti_planes_on(l) == 3);
  // degree by rank computations
  const auto& v = dp.vertices();
  for (std::size_t i = 0; i < v.size(); i += 9) {
    int d = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      d += j != i && meet_dim(pg52().planes()[std::size_t(v[i])], pg52().planes()[std::size_t(v[j])],
                              pg52().field()) == 2;
    CHECK(d == 14);
  }
}

TEST_CASE("dual polar graph of W(5,3)", "[dualpolar]") {
  const DualPolarGraph dp(pg53());
  CHECK(dp.vertices().size() == 1120);
  // each of the 13 lines of a vertex lies on 3 further t.i. planes
  CHECK(dp.degree() == 13 * 3);
  CHECK(dp.ti_lines().size() == 3640);
  for (Index l : dp.ti_lines())
    REQUIRE(dp.ti_planes_on(l) == 4);
}

TEST_CASE("dp_verify argument checks", "[dualpolar]") {
  const DualPolarGraph dp(pg52());
  CHECK_THROWS_AS(dp_verify(dp, PlaneSet(pg52(), dp.vertices())), TrivialSet);
  CHECK_THROWS_AS(dp_verify(dp, PlaneSet(pg52())), TrivialSet);
  Index outside = 0;
  while (dp.is_vertex(outside))
    ++outside;
  CHECK_THROWS_AS(dp_verify(dp, PlaneSet(pg52(), std::vector<Index>{outside})), InvalidArgs);

  std::mt19937 rng(9);
  int intriguing = 0;
  for (int t = 0; t < 20; ++t) {
    auto v = dp.vertices();
    std::ranges::shuffle(v, rng);
    v.resize(100);
    intriguing += dp_verify(dp, PlaneSet(pg52(), v)).intriguing() != nullptr;
  }
  CHECK(intriguing == 0);
}

TEST_CASE("a plane spread of W(5,2) is intriguing in the dual polar graph", "[dualpolar]") {
  const DualPolarGraph dp(pg52());
  std::vector<std::vector<int>> rows;
  for (Index v : dp.vertices()) {
    auto pts = pg52().plane_points(v);
    rows.emplace_back(pts.begin(), pts.end());
  }
  std::mt19937_64 rng(4);
  ExactCover solver(63, rows);
  std::vector<int> sol;
  REQUIRE(solver.solve(rng, 1u << 20, ExactCover::Clock::now() + std::chrono::seconds(30), sol) ==
          ExactCover::Status::Found);
  CHECK(sol.size() == 9);
  std::vector<Index> planes;
  for (int r : sol)
    planes.push_back(dp.vertices()[std::size_t(r)]);
  const auto cert = dp_verify(dp, PlaneSet(pg52(), planes));
  REQUIRE(cert.intriguing());
  // pairwise disjoint, so x' = 0; then |Y|(k + x) = N x gives x = 1, i.e.
  // eigenvalue -1 rather than the smallest eigenvalue -(q^2+q+1) = -7
  CHECK(cert.intriguing()->x_prime == 0);
  CHECK(cert.intriguing()->x == 1);
  CHECK(9 * (dp.degree() + 1) == 135 * 1);
  CHECK(cert.intriguing()->eigenvalue_index == 2);
  CHECK_FALSE(cert.intriguing()->tight);
}

TEST_CASE("dual polar spectrum annihilates the adjacency matrix", "[dualpolar]") {
  const DualPolarGraph dp(pg52());
  const auto& v = dp.vertices();
  const std::size_t m = v.size();
  using Mat = std::vector<std::vector<std::int64_t>>;
  Mat a(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a[i][j] = i != j && meet_dim(pg52().planes()[std::size_t(v[i])], pg52().planes()[std::size_t(v[j])],
                                   pg52().field()) == 2;
  const auto sp = dp.spectrum();
  CHECK(sp == Spectrum{14, 5, -1, -7});
  // prod (A - t I) over all four eigenvalues is zero
  Mat p(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    p[i][i] = 1;
  for (std::int64_t t : {sp.valency, sp.lambda1, sp.lambda2, sp.lambda3}) {
    Mat next(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        const std::int64_t pik = p[i][k];
        if (pik == 0)
          continue;
        for (std::size_t j = 0; j < m; ++j)
          next[i][j] += pik * (a[k][j] - (k == j ? t : 0));
      }
    p = std::move(next);
  }
  bool zero = true;
  for (const auto& row : p)
    for (std::int64_t e : row)
      zero = zero && e == 0;
  CHECK(zero);
}

TEST_CASE("t.i. planes through a point are tight in the dual polar graph", "[dualpolar]") {
  for (const Geometry* g : {&pg52(), &pg53()}) {
    const DualPolarGraph dp(*g);
    const int q = g->q();
    for (Index p : {Index(0), Index(17)}) {
      std::vector<Index> through;
      for (Index pl : g->point_planes(p))
        if (dp.is_vertex(pl))
          through.push_back(pl);
      CHECK(through.size() == std::size_t((q * q + 1) * (q + 1)));
      const auto cert = dp_verify(dp, PlaneSet(*g, through));
      REQUIRE(cert.intriguing());
      // q+1 lines on p in a member, q further planes on each; a non-member
      // meets p-perp in a line which spans a member with p
      CHECK(cert.intriguing()->x_prime == (q + 1) * q);
      CHECK(cert.intriguing()->x == 1);
      CHECK(cert.intriguing()->eigenvalue_index == 1);
      CHECK(cert.intriguing()->tight);
    }
  }
}

TEST_CASE("symplectic group elements", "[dualpolar]") {
  const auto sp = standard_symplectic(pg53());
  std::mt19937_64 rng(3);
  const auto g = random_symplectic_of_order(sp, 7, rng);
  REQUIRE(g);
  CHECK(preserves_form(*g, sp));
  CHECK(projective_order(*g, pg53().field()) == 7);
  // order 7 acts without fixed points or lines on PG(5,3)
  const auto pts = act_on_points(pg53(), *g);
  for (std::size_t i = 0; i < pts.size(); ++i)
    REQUIRE(pts[i] != Index(i));
  for (const auto& orbit : cycles(act_on_lines(pg53(), *g)))
    REQUIRE(orbit.size() == 7);
}

TEST_CASE("spread search W(5,2)", "[dualpolar]") {
  const DualPolarGraph dp(pg52());
  const auto res = search_w5_spread(dp, opts(1, 30));
  REQUIRE(res.status == SearchStatus::Found);
  CHECK(res.spread.lines.size() == 21);
  CHECK(w5_spread_defect(dp, res.spread).empty());
  for (Index l : res.spread.lines) {
    const Subspace& line = pg52().lines()[std::size_t(l)];
    REQUIRE(dp.symplectic().form(line.row(0), line.row(1)) == 0);
  }
  const auto planes = dp_spread_planes(dp, res.spread);
  CHECK(planes.size() == 63);
  const auto cert = dp_verify(dp, planes);
  REQUIRE(cert.intriguing());
  CHECK(cert.intriguing()->x == 7);
  CHECK(cert.intriguing()->x_prime == 6);
  CHECK(cert.matches_expected);
  CHECK(cert.size_matches_spread);

  const auto again = search_w5_spread(dp, opts(1, 30));
  CHECK(again.spread.lines == res.spread.lines);

  W5LineSpread broken = res.spread;
  broken.lines.pop_back();
  CHECK_THROWS_AS(dp_spread_planes(dp, broken), InvalidSpread);
  broken = res.spread;
  for (std::size_t l = 0; l < pg52().lines().size(); ++l)
    if (dp.ti_planes_on(Index(l)) == 0) {
      broken.lines.front() = Index(l);
      break;
    }
  CHECK(w5_spread_defect(dp, broken).find("not totally isotropic") != std::string::npos);
}

TEST_CASE("spread search W(5,3)", "[dualpolar]") {
  const DualPolarGraph dp(pg53());
  for (std::uint64_t seed : {1, 2}) {
    const auto res = search_w5_spread(dp, opts(seed, 120));
    REQUIRE(res.status == SearchStatus::Found);
    CHECK(res.spread.lines.size() == 91);
    const auto planes = dp_spread_planes(dp, res.spread);
    CHECK(planes.size() == 364);
    const auto cert = dp_verify(dp, planes);
    REQUIRE(cert.intriguing());
    CHECK(cert.intriguing()->x == 13);
    CHECK(cert.intriguing()->x_prime == 12);
    CHECK(cert.intriguing()->eigenvalue_index == 2);
    CHECK(cert.matches_expected);
  }
}

TEST_CASE("a zero budget times out", "[dualpolar]") {
  const DualPolarGraph dp(pg53());
  const auto res = search_w5_spread(dp, opts(1, 0));
  CHECK(res.status == SearchStatus::Timeout);
  CHECK(res.spread.lines.empty());
}
