#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <vector>

#include "gis/grassmann.hpp"
#include "gis/intriguing.hpp"

using namespace gis;

namespace {

// Adjacency by rank computations only.
std::vector<std::vector<Index>> brute_adjacency(const Geometry& g) {
  const auto& planes = g.planes();
  std::vector<std::vector<Index>> adj(planes.size());
  for (std::size_t a = 0; a < planes.size(); ++a)
    for (std::size_t b = a + 1; b < planes.size(); ++b)
      if (meet_dim(planes[a], planes[b], g.field()) == 2) {
        adj[a].push_back(Index(b));
        adj[b].push_back(Index(a));
      }
  return adj;
}

const Geometry& pg52() {
  static const Geometry g(5, 2);
  return g;
}

const std::vector<std::vector<Index>>& adj52() {
  static const auto adj = brute_adjacency(pg52());
  return adj;
}

int brute_degree(Index p, const std::vector<bool>& in) {
  int d = 0;
  for (Index t : adj52()[std::size_t(p)])
    d += in[std::size_t(t)] ? 1 : 0;
  return d;
}

} // namespace

TEST_CASE("spectrum examples", "[grassmann]") {
  CHECK(spectrum(5, 2) == Spectrum{98, 35, 5, -7});
  CHECK(spectrum(7, 2).lambda2 == 53);
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    CHECK(spectrum(5, q).lambda2 == std::int64_t(q) * q * q - q - 1);
    const std::int64_t q2 = std::int64_t(q) * q;
    CHECK(spectrum(7, q).lambda2 == q2 * q2 * q + q2 * q2 + q2 * q - q - 1);
  }
  CHECK_THROWS_AS(spectrum(4, 2), InvalidArgs);
}

TEST_CASE("spectrum closed forms and ordering over the grid", "[grassmann][property]") {
  for (int n = 5; n <= 12; ++n)
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
      const Spectrum s = spectrum(n, q);
      INFO("n=" << n << " q=" << q);
      const BigInt Q(q);
      REQUIRE(BigInt(s.valency) == theta(2, q) * (theta(n - 2, q) - 1));
      REQUIRE(BigInt(s.lambda1) == Q * Q * (q + 1) * (ipow(Q, unsigned(n - 3)) - 1) / (q - 1) - 1);
      REQUIRE(BigInt(s.lambda2) == (ipow(Q, unsigned(n - 1)) - ipow(Q, 3)) / (q - 1) - q - 1);
      REQUIRE(BigInt(s.lambda3) == -theta(2, q));
      REQUIRE(s.valency > s.lambda1);
      REQUIRE(s.lambda1 > s.lambda2);
      REQUIRE(s.lambda2 > s.lambda3);
    }
}

TEST_CASE("spectrum matches trace identities of the PG(5,2) adjacency", "[grassmann][oracle]") {
  const Geometry& g = pg52();
  const auto& adj = adj52();
  const BigInt N = gauss_binom(6, 3, 2);
  const Spectrum s = spectrum(5, 2);
  // multiplicity of lambda_j in the Grassmann scheme: [6 j] - [6 j-1]
  const std::vector<BigInt> mult = {1, gauss_binom(6, 1, 2) - 1, gauss_binom(6, 2, 2) - gauss_binom(6, 1, 2),
                                    gauss_binom(6, 3, 2) - gauss_binom(6, 2, 2)};
  const std::vector<BigInt> eig = {s.valency, s.lambda1, s.lambda2, s.lambda3};
  auto moment = [&](unsigned e) {
    BigInt t = 0;
    for (std::size_t j = 0; j < 4; ++j)
      t += mult[j] * ipow(eig[j], e);
    return t;
  };
  CHECK(std::accumulate(mult.begin(), mult.end(), BigInt(0)) == N);

  for (const auto& row : adj)
    REQUIRE(std::int64_t(row.size()) == s.valency);
  // trace A^3 = sum over vertices of edges among neighbours, times 2
  BigInt closed_walks3 = 0;
  std::vector<bool> mark(g.plane_count(), false);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    for (Index u : adj[v])
      mark[std::size_t(u)] = true;
    for (Index u : adj[v])
      for (Index w : adj[std::size_t(u)])
        closed_walks3 += mark[std::size_t(w)] ? 1 : 0;
    for (Index u : adj[v])
      mark[std::size_t(u)] = false;
  }
  CHECK(moment(1) == 0);
  CHECK(moment(2) == N * s.valency);
  CHECK(moment(3) == closed_walks3);

  // lambda1 + 1 breaks the first identity
  std::vector<BigInt> off_by_one = eig;
  off_by_one[1] += 1;
  BigInt t = 0;
  for (std::size_t j = 0; j < 4; ++j)
    t += mult[j] * off_by_one[j];
  CHECK(t != 0);
}

TEST_CASE("eigenvector identity for a point-star by pairwise meets", "[grassmann][oracle]") {
  const Geometry& g = pg52();
  std::vector<bool> in(g.plane_count(), false);
  for (std::size_t p = 0; p < g.plane_count(); ++p)
    in[p] = meet_dim(g.points()[0], g.planes()[p], g.field()) == 1;
  std::int64_t x = -1, xp = -1;
  for (std::size_t p = 0; p < g.plane_count(); ++p) {
    const int d = brute_degree(Index(p), in);
    std::int64_t& slot = in[p] ? xp : x;
    if (slot < 0)
      slot = d;
    REQUIRE(slot == d);
  }
  CHECK(x == 7);
  CHECK(xp == 42);
  CHECK(xp - x == spectrum(5, 2).lambda1);
}

TEST_CASE("degree_into examples", "[grassmann]") {
  const Geometry& g = pg52();
  const GrassmannGraph gg(g);
  CHECK(gg.valency() == 98);
  const PlaneSet none(g);
  const PlaneSet all = PlaneSet::all(g);
  for (std::size_t p = 0; p < g.plane_count(); p += 101) {
    CHECK(gg.degree_into(Index(p), none) == 0);
    CHECK(gg.degree_into(Index(p), all) == 98);
  }
  const PlaneSet star(g, g.point_planes(0));
  CHECK(star.size() == 155);
  for (Index p : g.point_planes(0))
    REQUIRE(gg.degree_into(p, star) == 42);
  CHECK_THROWS_AS(gg.degree_into(-1, star), IndexOutOfRange);
  CHECK_THROWS_AS(gg.degree_into(Index(g.plane_count()), star), IndexOutOfRange);
  const Geometry other(5, 2);
  CHECK_THROWS_AS(gg.degree_into(0, PlaneSet(other)), DimensionMismatch);
}

TEST_CASE("line-index degrees equal pairwise-meet degrees", "[grassmann][oracle]") {
  const Geometry& g = pg52();
  const GrassmannGraph gg(g);
  std::mt19937 rng(17);
  for (int t = 0; t < 200; ++t) {
    PlaneSet set(g);
    std::vector<bool> in(g.plane_count(), false);
    const unsigned density = 1 + rng() % 60;
    for (std::size_t p = 0; p < g.plane_count(); ++p)
      if (rng() % 100 < density) {
        set.insert(Index(p));
        in[p] = true;
      }
    const Index pi = Index(rng() % g.plane_count());
    REQUIRE(gg.degree_into(pi, set) == brute_degree(pi, in));
    if (t % 20 == 0) {
      const auto all = gg.degrees(set);
      for (std::size_t p = 0; p < g.plane_count(); ++p)
        REQUIRE(all[p] == brute_degree(Index(p), in));
    }
  }
}

TEST_CASE("handshake", "[grassmann][property]") {
  const Geometry& g = pg52();
  const GrassmannGraph gg(g);
  const auto full = gg.degrees(PlaneSet::all(g));
  CHECK(std::accumulate(full.begin(), full.end(), std::int64_t(0)) == std::int64_t(g.plane_count()) * 98);
  std::mt19937 rng(23);
  for (int t = 0; t < 50; ++t) {
    PlaneSet set(g);
    for (std::size_t p = 0; p < g.plane_count(); ++p)
      if (rng() % 3 == 0)
        set.insert(Index(p));
    const auto deg = gg.degrees(set);
    std::int64_t inside = 0;
    for (Index p : set.indexes())
      inside += deg[std::size_t(p)];
    REQUIRE(inside % 2 == 0);
  }
}
