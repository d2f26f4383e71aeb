#pragma once

#include <chrono>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "dualpolar.hpp"
#include "geometry.hpp"
#include "grassmann.hpp"
#include "intriguing.hpp"

namespace gis {

enum class SelftestLevel { Quick, Full };

struct SelftestOptions {
  SelftestLevel level = SelftestLevel::Quick;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::chrono::duration<double> search_budget = std::chrono::seconds(60);
  /// Spectrum used to classify certificates.
  std::function<Spectrum(int, int)> spectrum = [](int n, int q) { return gis::spectrum(n, q); };
};

struct SelftestCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  double seconds = 0;

  bool passed() const {
    return std::ranges::all_of(checks, [](const SelftestCheck& c) { return c.ok; });
  }
  const SelftestCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.ok)
        return &c;
    return nullptr;
  }
};

namespace detail {

class Checker {
public:
  explicit Checker(SelftestReport& r) : r_(r) {}

  void operator()(std::string name, bool ok, std::string detail = {}) {
    r_.checks.push_back({std::move(name), ok, std::move(detail)});
  }

  // x, x', eigenvalue index and tightness in one check.
  void intriguing(const std::string& name, const Certificate& c, std::int64_t x, std::int64_t xp,
                  int index) {
    const Intriguing* in = c.intriguing();
    std::string got = in ? "x=" + std::to_string(in->x) + " x'=" + std::to_string(in->x_prime) +
                               " index=" + std::to_string(in->eigenvalue_index)
                         : "not intriguing";
    const bool ok = in && in->x == x && in->x_prime == xp && in->eigenvalue_index == index &&
                    in->tight == (index == 1 || index == 3);
    (*this)(name, ok, got);
  }

private:
  SelftestReport& r_;
};

inline std::string sz(std::size_t v) { return std::to_string(v); }

inline void check_geometry_counts(Checker& check, const Geometry& g) {
  const int n = g.n(), q = g.q();
  const std::string tag = "PG(" + std::to_string(n) + "," + std::to_string(q) + ")";
  bool ok = BigInt(g.points().size()) == theta(n, q) &&
            BigInt(g.lines().size()) == gauss_binom(n + 1, 2, q) &&
            BigInt(g.planes().size()) == gauss_binom(n + 1, 3, q) &&
            BigInt(g.hyperplanes().size()) == theta(n, q);
  if (g.has_solids())
    ok = ok && BigInt(g.solids().size()) == gauss_binom(n + 1, 4, q);
  check(tag + " subspace counts", ok,
        sz(g.points().size()) + " points, " + sz(g.lines().size()) + " lines, " + sz(g.planes().size()) + " planes");
}

inline void check_w5(Checker& check, const Geometry& g, const GrassmannGraph& gg, bool solids) {
  const int q = g.q();
  const std::string tag = "W(5," + std::to_string(q) + ")";
  auto planes = symplectic_w5(g).second;
  const std::size_t want = std::size_t((q * q * q + 1) * (q * q + 1) * (q + 1));
  check(tag + " plane count", planes.size() == want, sz(planes.size()));
  CheckSet cs;
  cs.size_formula = cs.profiles = cs.divisibility = true;
  cs.solids = solids;
  auto cert = certify(gg, planes, cs);
  check.intriguing(tag + " certificate", cert, std::int64_t(q + 1) * (q + 1),
                   std::int64_t(q + 1) * (q + 1) + gg.spectrum().lambda2, 2);
  const auto& id = cert.identities;
  check(tag + " size formula", id.size_formula.value_or(false));
  check(tag + " point profile", id.point_profile && id.point_profile->holds,
        id.point_profile ? id.point_profile->expected.str() : "skipped");
  check(tag + " hyperplane profile", id.hyperplane_profile && id.hyperplane_profile->holds,
        id.hyperplane_profile ? id.hyperplane_profile->expected.str() : "skipped");
  check(tag + " divisibility", id.divisibility && id.divisibility->passes());
  if (solids) {
    check(tag + " solid identity", id.solids && id.solids->identity_holds);
    check(tag + " lines and solids on 0 or q+1 planes",
          id.solids && id.solids->lines_zero_or_q1 && id.solids->solids_zero_or_q1);
  }
}

inline void check_spread(Checker& check, const Geometry& g, const GrassmannGraph& gg) {
  const int n = g.n(), q = g.q();
  const std::string tag = "spread PG(" + std::to_string(n) + "," + std::to_string(q) + ")";
  const LineSpread s = regular_spread(g);
  check(tag + " line count", BigInt(s.lines.size()) * (q + 1) == theta(n, q), sz(s.lines.size()));
  const PlaneSet planes = spread_planes(s);
  check(tag + " plane count", BigInt(planes.size()) == BigInt(s.lines.size()) * theta(n - 2, q),
        sz(planes.size()));
  CheckSet cs;
  cs.size_formula = cs.divisibility = cs.full_lines = true;
  auto cert = certify(gg, planes, cs);
  const std::int64_t x = std::int64_t(q + 1) * to_i64(theta(2, q));
  check.intriguing(tag + " certificate", cert, x, x + gg.spectrum().lambda2, 2);
  check(tag + " size formula", cert.identities.size_formula.value_or(false));
  check(tag + " divisibility", cert.identities.divisibility && cert.identities.divisibility->passes());
  const auto& fl = cert.identities.full_lines;
  check(tag + " full lines are the spread",
        fl && fl->full_lines == s.lines && fl->pairwise_skew && fl->based_on_spread);
}

inline void check_dual_polar(Checker& check, const Geometry& g, const SelftestOptions& opts) {
  const int q = g.q();
  const std::string tag = "dual polar W(5," + std::to_string(q) + ")";
  const DualPolarGraph dp(g);
  check(tag + " vertices and degree",
        dp.vertices().size() == std::size_t((q * q * q + 1) * (q * q + 1) * (q + 1)) &&
            dp.degree() == q * to_i64(theta(2, q)),
        sz(dp.vertices().size()) + " vertices, degree " + std::to_string(dp.degree()));
  SpreadSearchOptions so;
  so.seed = opts.seed;
  so.budget = opts.search_budget;
  const auto res = search_w5_spread(dp, so);
  if (res.status != SearchStatus::Found) {
    check(tag + " spread search", res.status == SearchStatus::Timeout, to_string(res.status));
    return;
  }
  const auto cert = dp_verify(dp, dp_spread_planes(dp, res.spread));
  const Intriguing* in = cert.intriguing();
  const std::int64_t x = to_i64(theta(2, q));
  check(tag + " spread set", in && cert.size_matches_spread && in->x == x && in->x_prime == x - 1,
        sz(res.spread.lines.size()) + " lines, " + sz(cert.size) + " planes");
}

} // namespace detail

/// Rebuilds the reference instances and checks every construction against
/// its known parameters. Quick covers PG(5,2); Full adds PG(5,3) and PG(7,2).
inline SelftestReport run_selftest(const SelftestOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  SelftestReport report;
  detail::Checker check(report);
  BuildOptions bo;
  bo.threads = opts.threads;

  {
    const Geometry g(5, 2, bo);
    const GrassmannGraph gg(g, opts.spectrum(5, 2));
    detail::check_geometry_counts(check, g);
    const Spectrum& sp = gg.spectrum();
    check("PG(5,2) spectrum", sp == Spectrum{98, 35, 5, -7},
          std::to_string(sp.lambda1) + "," + std::to_string(sp.lambda2) + "," + std::to_string(sp.lambda3));

    auto star = point_star(g, 0);
    check("PG(5,2) point-star size", star.size() == 155, detail::sz(star.size()));
    check.intriguing("PG(5,2) point-star certificate", verify(gg, star), 7, 42, 1);
    auto hyp = hyperplane_planes(g, 0);
    check("PG(5,2) hyperplane size", hyp.size() == 155, detail::sz(hyp.size()));
    check.intriguing("PG(5,2) hyperplane certificate", verify(gg, hyp), 7, 42, 1);

    detail::check_w5(check, g, gg, true);
    auto broken = symplectic_w5(g).second;
    broken.erase(broken.indexes().front());
    const auto bc = verify(gg, broken);
    check("W(5,2) minus one plane is not intriguing",
          !bc.is_intriguing() && !std::get<NotIntriguing>(bc.verdict).witnesses.empty());

    detail::check_spread(check, g, gg);
    check("divisibility rejects n=6 q=2 x=21", !divisibility_check(6, 2, 21).passes());
    detail::check_dual_polar(check, g, opts);
  }

  if (opts.level == SelftestLevel::Full) {
    {
      const Geometry g(5, 3, bo);
      const GrassmannGraph gg(g, opts.spectrum(5, 3));
      detail::check_geometry_counts(check, g);
      detail::check_w5(check, g, gg, true);
      detail::check_spread(check, g, gg);
      detail::check_dual_polar(check, g, opts);
    }
    {
      const Geometry g(7, 2, bo);
      const GrassmannGraph gg(g, opts.spectrum(7, 2));
      detail::check_geometry_counts(check, g);
      check("PG(7,2) lambda2", gg.spectrum().lambda2 == 53, std::to_string(gg.spectrum().lambda2));
      auto star = point_star(g, 0);
      check("PG(7,2) point-star size", star.size() == 2667, detail::sz(star.size()));
      detail::check_spread(check, g, gg);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline void print_selftest(std::ostream& os, const SelftestReport& r) {
  for (const auto& c : r.checks) {
    os << (c.ok ? "pass  " : "FAIL  ") << c.name;
    if (!c.detail.empty())
      os << "  [" << c.detail << "]";
    os << '\n';
  }
  os << (r.passed() ? "all checks passed" : "selftest failed") << " (" << r.checks.size() << " checks, "
     << r.seconds << " s)\n";
}

} // namespace gis
