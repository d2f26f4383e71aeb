// One line per acceptance criterion: "criterion <k> PASS|FAIL (<seconds> s, limit <s>): <details>".
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gis/gis.hpp"

using namespace gis;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  // records a sub-check; failures are marked in the detail text
  void expect(bool cond, const std::string& what) {
    if (!detail.str().empty())
      detail << "; ";
    detail << (cond ? "" : "MISMATCH ") << what;
    ok = ok && cond;
  }
};

struct LambdaTwoExample {
  std::string name;
  int n, q;
  std::int64_t x;
};

std::vector<LambdaTwoExample> lambda2_examples;

std::string num(std::int64_t v) { return std::to_string(v); }

void expect_cert(Outcome& o, const Certificate& c, std::int64_t x, std::int64_t xp, int index) {
  const Intriguing* in = c.intriguing();
  o.expect(in != nullptr, "intriguing");
  if (!in)
    return;
  o.expect(in->x == x, "x=" + num(in->x));
  o.expect(in->x_prime == xp, "x'=" + num(in->x_prime));
  o.expect(in->eigenvalue_index == index, "eigenvalue index " + num(in->eigenvalue_index) + " (" +
                                              num(in->eigenvalue()) + ")");
  o.expect(in->tight == (index != 2), in->tight ? "tight" : "not tight");
}

void c1(Outcome& o) {
  const Geometry g(5, 2);
  const GrassmannGraph gg(g);
  o.expect(gg.spectrum().lambda1 == 35, "lambda1=" + num(gg.spectrum().lambda1));
  const auto star = point_star(g, 0);
  o.expect(star.size() == 155, num(std::int64_t(star.size())) + " planes");
  expect_cert(o, verify(gg, star), 7, 42, 1);
}

void c2(Outcome& o) {
  const Geometry g(5, 2);
  const GrassmannGraph gg(g);
  const auto h = hyperplane_planes(g, 0);
  o.expect(h.size() == 155, num(std::int64_t(h.size())) + " planes");
  expect_cert(o, verify(gg, h), 7, 42, 1);
}

void c3(Outcome& o) {
  const Geometry g(5, 2);
  const GrassmannGraph gg(g);
  const auto w = symplectic_w5(g).second;
  o.expect(w.size() == 135, num(std::int64_t(w.size())) + " t.i. planes");
  CheckSet cs;
  cs.profiles = cs.solids = true;
  const auto cert = certify(gg, w, cs);
  expect_cert(o, cert, 9, 14, 2);
  o.expect(cert.intriguing() && cert.intriguing()->eigenvalue() == 5, "eigenvalue 5");
  const auto& id = cert.identities;
  o.expect(id.point_profile && id.point_profile->holds && id.point_profile->expected.str() == "15",
           "every point on 15 planes");
  o.expect(id.hyperplane_profile && id.hyperplane_profile->holds && id.hyperplane_profile->expected.str() == "15",
           "every hyperplane on 15 planes");
  bool z_ok = id.solids && id.solids->profiles.size() == 651 && id.solids->identity_holds;
  if (id.solids)
    for (const auto& p : id.solids->profiles)
      z_ok = z_ok && p.z == 45 - 3 * p.beta;
  o.expect(z_ok, "z = 45 - 3 beta on all 651 solids");
  o.expect(id.solids && id.solids->lines_zero_or_q1 && id.solids->solids_zero_or_q1,
           "lines and solids on 0 or 3 planes");
  if (cert.intriguing())
    lambda2_examples.push_back({"W(5,2)", 5, 2, cert.intriguing()->x});
}

void c4(Outcome& o) {
  const Geometry g(5, 2);
  const GrassmannGraph gg(g);
  const auto s = regular_spread(g);
  o.expect(s.lines.size() == 21 && spread_defect(g, s.lines).empty(), num(std::int64_t(s.lines.size())) +
                                                                           " lines partitioning 63 points");
  const auto planes = spread_planes(s);
  o.expect(planes.size() == 315, num(std::int64_t(planes.size())) + " planes");
  const auto cert = certify(gg, planes, CheckSet{false, false, false, false, true});
  expect_cert(o, cert, 21, 26, 2);
  const auto& fl = cert.identities.full_lines;
  o.expect(fl && fl->full_lines == s.lines, "full lines are the 21 spread lines");
  o.expect(fl && fl->pairwise_skew, "pairwise skew");
  o.expect(fl && fl->based_on_spread, "based on a line spread");
  if (cert.intriguing())
    lambda2_examples.push_back({"spread PG(5,2)", 5, 2, cert.intriguing()->x});
}

void c5(Outcome& o) {
  const Geometry g(7, 2);
  const GrassmannGraph gg(g);
  o.expect(gg.spectrum().lambda2 == 53, "lambda2=" + num(gg.spectrum().lambda2));
  const auto s = regular_spread(g);
  o.expect(s.lines.size() == 85, num(std::int64_t(s.lines.size())) + " lines");
  const auto planes = spread_planes(s);
  const BigInt bound = BigInt((1 << 8) - 1) * ((1 << 6) - 1) / ((2 - 1) * (4 - 1));
  o.expect(BigInt(planes.size()) == bound && planes.size() == 5355,
           num(std::int64_t(planes.size())) + " planes, bound " + bound.str());
  const auto cert = certify(gg, planes, CheckSet{false, false, false, false, true});
  expect_cert(o, cert, 21, 74, 2);
  const auto& fl = cert.identities.full_lines;
  o.expect(fl && fl->pairwise_skew && fl->full_lines.size() == 85, "85 full lines, mutually skew");
  if (cert.intriguing())
    lambda2_examples.push_back({"spread PG(7,2)", 7, 2, cert.intriguing()->x});
}

void c6(Outcome& o) {
  const Geometry g(5, 3);
  const GrassmannGraph gg(g);
  const auto w = symplectic_w5(g).second;
  o.expect(w.size() == 1120, "W(5,3) " + num(std::int64_t(w.size())) + " planes");
  const auto wc = verify(gg, w);
  o.expect(wc.intriguing() && wc.intriguing()->x == 16 && wc.intriguing()->x_prime == 39,
           wc.intriguing() ? "W(5,3) x=" + num(wc.intriguing()->x) + " x'=" + num(wc.intriguing()->x_prime)
                           : "W(5,3) not intriguing");
  if (wc.intriguing())
    lambda2_examples.push_back({"W(5,3)", 5, 3, wc.intriguing()->x});

  const auto planes = spread_planes(regular_spread(g));
  o.expect(planes.size() == 1183, "spread PG(5,3) " + num(std::int64_t(planes.size())) + " planes (want 1183)");
  const auto sc = verify(gg, planes);
  o.expect(sc.intriguing() && sc.intriguing()->x == 52,
           sc.intriguing() ? "spread PG(5,3) x=" + num(sc.intriguing()->x) : "spread PG(5,3) not intriguing");
  if (sc.intriguing())
    lambda2_examples.push_back({"spread PG(5,3)", 5, 3, sc.intriguing()->x});
}

void c7(Outcome& o) {
  const Geometry g(5, 2);
  const GrassmannGraph gg(g);
  auto w = symplectic_w5(g).second;
  w.erase(w.indexes().front());
  const auto cert = verify(gg, w);
  const auto* ni = std::get_if<NotIntriguing>(&cert.verdict);
  o.expect(ni != nullptr, "not intriguing");
  o.expect(ni && !ni->witnesses.empty(), num(ni ? std::int64_t(ni->witnesses.size()) : 0) + " witnesses");
}

void c8(Outcome& o) {
  o.expect(lambda2_examples.size() == 5, num(std::int64_t(lambda2_examples.size())) + " certified lambda2 examples");
  for (const auto& e : lambda2_examples)
    o.expect(divisibility_check(e.n, e.q, e.x).passes(), e.name + " x=" + num(e.x) + " passes");
  o.expect(!divisibility_check(6, 2, 21).passes(), "n=6 q=2 x=21 reported as fail");
}

void c9(Outcome& o) {
  std::size_t cases = 0;
  bool all = true;
  for (int q : {2, 3}) {
    const Field f(q);
    for (int m = 1; m <= 8; ++m)
      for (int k = 1; k <= std::min(4, m); ++k) {
        std::uint64_t count = 0;
        for_each_rref(k, m, f, [&](const Matrix&) { ++count; });
        const bool same = BigInt(count) == gauss_binom(m, k, q);
        if (!same)
          o.expect(false, "q=" + num(q) + " [" + num(m) + " " + num(k) + "] enumerated " + std::to_string(count) +
                              ", formula " + gauss_binom(m, k, q).str());
        all = all && same;
        ++cases;
      }
  }
  o.expect(all, num(std::int64_t(cases)) + " (n+1,k,q) cases agree");
}

void c10(Outcome& o) {
  {
    const Geometry g(5, 2);
    const DualPolarGraph dp(g);
    o.expect(dp.vertices().size() == 135, num(std::int64_t(dp.vertices().size())) + " vertices");
    o.expect(dp.degree() == 14, "degree " + num(dp.degree()));
  }
  const Geometry g(5, 3);
  const DualPolarGraph dp(g);
  SpreadSearchOptions so;
  so.budget = std::chrono::minutes(30);
  const auto res = search_w5_spread(dp, so);
  if (res.status != SearchStatus::Found) {
    o.expect(res.status == SearchStatus::Timeout, std::string("W(5,3) spread search: ") + to_string(res.status));
    return;
  }
  const auto cert = dp_verify(dp, dp_spread_planes(dp, res.spread));
  const Intriguing* in = cert.intriguing();
  o.expect(true, "W(5,3) spread found (" + num(std::int64_t(res.spread.lines.size())) + " lines, " +
                     std::to_string(res.seconds) + " s)");
  o.expect(cert.size == 364, num(std::int64_t(cert.size)) + " vertices");
  o.expect(in && in->x == 13 && in->x_prime == 12,
           in ? "x=" + num(in->x) + " x'=" + num(in->x_prime) : "not intriguing");
}

} // namespace

int main() {
  struct Criterion {
    int id;
    double limit_secs;
    std::function<void(Outcome&)> run;
  };
  // criterion 6 is "< 10 min combined"; criterion 10's limit is the search budget plus slack
  const std::vector<Criterion> criteria = {
      {1, 5, c1},   {2, 5, c2},     {3, 30, c3},  {4, 10, c4},  {5, 300, c5},
      {6, 600, c6}, {7, 5, c7},     {8, 1, c8},   {9, 120, c9}, {10, 1860, c10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_secs)
      o.expect(false, "over time limit");
    failures += o.ok ? 0 : 1;
    std::cout << "criterion " << c.id << ' ' << (o.ok ? "PASS" : "FAIL") << " (" << secs << " s, limit "
              << c.limit_secs << " s): " << o.detail.str() << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
