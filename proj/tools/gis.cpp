// gis: construct plane sets of PG(n,q), certify intriguing sets, run the selftest.
//
// Exit codes: 0 intriguing / success, 1 not intriguing (or trivial set, or
// no spread exists), 2 invalid input, 3 spread search timed out.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gis/gis.hpp"

namespace {

enum Exit { kOk = 0, kNotIntriguing = 1, kInputError = 2, kTimeout = 3 };

struct Common {
  std::uint64_t max_planes = 200000;
  unsigned threads = 0;
  std::string out = "-";

  gis::BuildOptions build() const {
    gis::BuildOptions b;
    b.max_planes = max_planes;
    // GIS_THREADS wins over --threads
    b.threads = std::getenv("GIS_THREADS") ? 0 : threads;
    return b;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--max-planes", c.max_planes, "Refuse geometries with more planes")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads (0: all cores; GIS_THREADS overrides)");
  app->add_option("--out", c.out, "Output file, - for stdout")->capture_default_str();
}

// Writes through a buffer so nothing is emitted on failure.
int emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "gis: cannot write " << path << '\n';
    return kInputError;
  }
  return kOk;
}

struct ConstructArgs {
  std::string family;
  int n = 0, q = 0;
  int point = 0;
  int hyperplane = 0;
  std::uint64_t seed = 1;
  double budget_secs = 60;
  std::string emit = "planes";
  Common common;
};

int run_construct(const ConstructArgs& a) {
  const gis::Geometry g(a.n, a.q, a.common.build());
  std::ostringstream os;
  const bool lines = a.emit == "lines";
  if (a.family == "point-star") {
    gis::write_plane_set(os, gis::point_star(g, a.point));
  } else if (a.family == "hyperplane") {
    gis::write_plane_set(os, gis::hyperplane_planes(g, a.hyperplane));
  } else if (a.family == "spread") {
    const auto s = gis::regular_spread(g);
    if (lines)
      gis::write_lines(os, g, s.lines);
    else
      gis::write_plane_set(os, gis::spread_planes(s));
  } else if (a.family == "symplectic") {
    gis::write_plane_set(os, gis::symplectic_w5(g).second);
  } else if (a.family == "dp-spread") {
    const gis::DualPolarGraph dp(g);
    gis::SpreadSearchOptions so;
    so.seed = a.seed;
    so.budget = std::chrono::duration<double>(a.budget_secs);
    const auto res = gis::search_w5_spread(dp, so);
    std::cerr << "search: " << gis::to_string(res.status) << ", " << res.nodes << " nodes, " << res.restarts
              << " restarts, " << res.seconds << " s\n";
    if (res.status == gis::SearchStatus::Timeout)
      return kTimeout;
    if (res.status == gis::SearchStatus::Exhausted)
      return kNotIntriguing;
    if (lines)
      gis::write_lines(os, g, res.spread.lines);
    else
      gis::write_plane_set(os, gis::dp_spread_planes(dp, res.spread));
  } else {
    throw gis::InvalidArgs("unknown family '" + a.family + "'");
  }
  return emit(a.common.out, os.str());
}

struct VerifyArgs {
  std::string input = "-";
  std::string graph = "grassmann";
  std::vector<std::string> checks;
  bool profiles = false, solids = false, full_lines = false, divisibility = false;
  Common common;
};

gis::CheckSet parse_checks(const VerifyArgs& a) {
  gis::CheckSet cs;
  cs.profiles = a.profiles;
  cs.solids = a.solids;
  cs.full_lines = a.full_lines;
  cs.divisibility = a.divisibility;
  for (const auto& c : a.checks) {
    if (c == "all")
      cs = gis::CheckSet::all();
    else if (c == "size")
      cs.size_formula = true;
    else if (c == "profiles")
      cs.profiles = true;
    else if (c == "solids")
      cs.solids = true;
    else if (c == "full-lines")
      cs.full_lines = true;
    else if (c == "divisibility")
      cs.divisibility = true;
    else
      throw gis::InvalidArgs("unknown check '" + c + "'");
  }
  return cs;
}

int run_verify(const VerifyArgs& a) {
  const gis::CheckSet checks = parse_checks(a);
  gis::SubspaceFile file;
  if (a.input == "-") {
    file = gis::parse_subspace_file(std::cin);
  } else {
    std::ifstream in(a.input);
    if (!in)
      throw gis::InvalidArgs("cannot open " + a.input);
    file = gis::parse_subspace_file(in);
  }
  const gis::Geometry g(file.n, file.q, a.common.build());
  const gis::PlaneSet set = gis::to_plane_set(file, g);
  std::ostringstream os;
  bool intriguing = false;
  if (a.graph == "dual-polar") {
    const gis::DualPolarGraph dp(g);
    const auto cert = gis::dp_verify(dp, set);
    gis::write_certificate(os, cert);
    intriguing = cert.intriguing() != nullptr;
  } else if (a.graph == "grassmann") {
    const gis::GrassmannGraph gg(g);
    const auto cert = gis::certify(gg, set, checks);
    gis::write_certificate(os, cert);
    intriguing = cert.is_intriguing();
  } else {
    throw gis::InvalidArgs("unknown graph '" + a.graph + "'");
  }
  if (const int rc = emit(a.common.out, os.str()); rc != kOk)
    return rc;
  return intriguing ? kOk : kNotIntriguing;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intriguing sets of the Grassmann graph of planes of PG(n,q)"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Write a plane set (or spread lines) to a file");
  construct->add_option("family,--family", ca.family, "point-star | hyperplane | spread | symplectic | dp-spread")
      ->required()
      ->check(CLI::IsMember({"point-star", "hyperplane", "spread", "symplectic", "dp-spread"}));
  construct->add_option("n,--n", ca.n, "Projective dimension")->required();
  construct->add_option("q,--q", ca.q, "Field order")->required();
  construct->add_option("--point", ca.point, "Point index for point-star")->capture_default_str();
  construct->add_option("--hyperplane", ca.hyperplane, "Hyperplane index for hyperplane")->capture_default_str();
  construct->add_option("--seed", ca.seed, "Search seed for dp-spread")->capture_default_str();
  construct->add_option("--budget-secs", ca.budget_secs, "Search time budget for dp-spread")->capture_default_str();
  construct->add_option("--emit", ca.emit, "planes, or lines for the spread families")
      ->check(CLI::IsMember({"planes", "lines"}))
      ->capture_default_str();
  add_common(construct, ca.common);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Certify a plane-set file; prints a GIS-CERT v1 document");
  verify->add_option("input", va.input, "Plane-set file, - for stdin")->capture_default_str();
  verify->add_option("--graph", va.graph, "grassmann | dual-polar")
      ->check(CLI::IsMember({"grassmann", "dual-polar"}))
      ->capture_default_str();
  verify->add_option("--checks", va.checks, "size, profiles, divisibility, solids, full-lines, all")->delimiter(',');
  verify->add_flag("--profiles", va.profiles, "Point and hyperplane profiles");
  verify->add_flag("--solids", va.solids, "Solid identity and 0-or-(q+1) pattern (n = 5)");
  verify->add_flag("--full-lines", va.full_lines, "Full lines and spread structure");
  verify->add_flag("--divisibility", va.divisibility, "Divisibility conditions on x");
  add_common(verify, va.common);

  std::string level = "quick";
  std::uint64_t st_seed = 1;
  double st_budget = 60;
  unsigned st_threads = 0;
  auto* selftest = app.add_subcommand("selftest", "Rebuild the reference instances and check them");
  selftest->add_option("level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  selftest->add_option("--seed", st_seed, "Spread search seed")->capture_default_str();
  selftest->add_option("--budget-secs", st_budget, "Spread search budget per instance")->capture_default_str();
  selftest->add_option("--threads", st_threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*construct)
      return run_construct(ca);
    if (*verify)
      return run_verify(va);
    gis::SelftestOptions so;
    so.level = level == "full" ? gis::SelftestLevel::Full : gis::SelftestLevel::Quick;
    so.seed = st_seed;
    so.search_budget = std::chrono::duration<double>(st_budget);
    so.threads = std::getenv("GIS_THREADS") ? 0 : st_threads;
    const auto report = gis::run_selftest(so);
    gis::print_selftest(std::cout, report);
    if (const auto* f = report.first_failure()) {
      std::cerr << "gis: selftest failed at: " << f->name << '\n';
      return kNotIntriguing;
    }
    return kOk;
  } catch (const gis::TrivialSet& e) {
    std::cerr << "gis: trivial set: " << e.what() << '\n';
    return kNotIntriguing;
  } catch (const gis::Error& e) {
    std::cerr << "gis: " << e.what() << '\n';
    return kInputError;
  }
}
