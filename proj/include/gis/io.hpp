#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "constructions.hpp"
#include "dualpolar.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "intriguing.hpp"
#include "plane_set.hpp"

namespace gis {

// Subspace files:
//
//   GIS v1 n=<n> q=<q> k=<vector dim> count=<m>
//   <m blocks of k rows, n+1 encoded field elements per row>
//
// Rows are RREF bases. Blank lines are ignored, so blocks may be separated.

struct SubspaceFile {
  int n = 0;
  int q = 0;
  int k = 0;
  std::vector<Subspace> blocks;
};

inline void write_header(std::ostream& os, int n, int q, int k, std::size_t count) {
  os << "GIS v1 n=" << n << " q=" << q << " k=" << k << " count=" << count << '\n';
}

inline void write_block(std::ostream& os, const Subspace& s) {
  for (int r = 0; r < s.dim(); ++r) {
    const auto row = s.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? " " : "") << int(row[c]);
    os << '\n';
  }
  os << '\n';
}

inline void write_subspaces(std::ostream& os, const Geometry& g, int k,
                            const std::vector<const Subspace*>& items) {
  write_header(os, g.n(), g.q(), k, items.size());
  for (const Subspace* s : items)
    write_block(os, *s);
}

/// Plane set in index order.
inline void write_plane_set(std::ostream& os, const PlaneSet& set) {
  const Geometry& g = set.geometry();
  std::vector<const Subspace*> items;
  for (Index p : set.indexes())
    items.push_back(&g.planes()[std::size_t(p)]);
  write_subspaces(os, g, 3, items);
}

/// Lines in the given order.
inline void write_lines(std::ostream& os, const Geometry& g, const std::vector<Index>& lines) {
  std::vector<const Subspace*> items;
  for (Index l : lines)
    items.push_back(&g.lines().at(std::size_t(l)));
  write_subspaces(os, g, 2, items);
}

namespace detail {

inline int parse_int(std::string_view tok, std::size_t line, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return v;
}

inline int header_field(const std::string& tok, const char* key, std::size_t line) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0)
    throw ParseError(line, "expected " + prefix + "<int>, got '" + tok + "'");
  return parse_int(std::string_view(tok).substr(prefix.size()), line, key);
}

inline bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

} // namespace detail

/// Parses and validates a subspace file: header, entry ranges, RREF form of
/// every block, no duplicate blocks, block count. Errors carry the 1-based
/// line number.
inline SubspaceFile parse_subspace_file(std::istream& is) {
  std::string text;
  std::size_t lineno = 0;
  auto next_nonblank = [&](std::string& out) {
    while (std::getline(is, out)) {
      ++lineno;
      if (!detail::blank(out))
        return true;
    }
    return false;
  };

  if (!next_nonblank(text))
    throw ParseError(lineno ? lineno : 1, "empty input");
  std::istringstream hs(text);
  std::string magic, version, tn, tq, tk, tc, extra;
  hs >> magic >> version >> tn >> tq >> tk >> tc;
  if (magic != "GIS" || version != "v1")
    throw ParseError(lineno, "expected header 'GIS v1 n=.. q=.. k=.. count=..'");
  if (hs >> extra)
    throw ParseError(lineno, "trailing header token '" + extra + "'");
  SubspaceFile file;
  file.n = detail::header_field(tn, "n", lineno);
  file.q = detail::header_field(tq, "q", lineno);
  file.k = detail::header_field(tk, "k", lineno);
  const int count = detail::header_field(tc, "count", lineno);
  if (file.n < 1 || file.n + 1 > kMaxAmbient)
    throw ParseError(lineno, "n=" + std::to_string(file.n) + " outside 1.." + std::to_string(kMaxAmbient - 1));
  if (file.k < 1 || file.k > file.n + 1)
    throw ParseError(lineno, "k=" + std::to_string(file.k) + " outside 1..n+1");
  if (count < 0)
    throw ParseError(lineno, "negative count");
  std::optional<Field> field;
  try {
    field.emplace(file.q);
  } catch (const NotPrimePower& e) {
    throw ParseError(lineno, e.what());
  }

  const int width = file.n + 1;
  std::unordered_set<Subspace, SubspaceHash> seen;
  file.blocks.reserve(std::size_t(count));
  for (int b = 0; b < count; ++b) {
    Matrix m(file.k, width);
    std::size_t first_line = 0;
    for (int r = 0; r < file.k; ++r) {
      if (!next_nonblank(text))
        throw ParseError(lineno + 1, "unexpected end of input in block " + std::to_string(b + 1) + " of " +
                                         std::to_string(count));
      if (r == 0)
        first_line = lineno;
      std::istringstream rs(text);
      std::string tok;
      int c = 0;
      while (rs >> tok) {
        if (c == width)
          throw ParseError(lineno, "more than " + std::to_string(width) + " entries in row");
        const int v = detail::parse_int(tok, lineno, "entry");
        if (!field->valid(v))
          throw ParseError(lineno, "entry " + tok + " is not an element of GF(" + std::to_string(file.q) + ")");
        m(r, c++) = Element(v);
      }
      if (c != width)
        throw ParseError(lineno, "expected " + std::to_string(width) + " entries, got " + std::to_string(c));
    }
    if (!is_rref(m))
      throw ParseError(first_line, "block " + std::to_string(b + 1) + " is not in reduced row-echelon form");
    Subspace s = Subspace::from_rref(m);
    if (!seen.insert(s).second)
      throw ParseError(first_line, "block " + std::to_string(b + 1) + " duplicates an earlier block");
    file.blocks.push_back(s);
  }
  if (next_nonblank(text))
    throw ParseError(lineno, "content after the declared " + std::to_string(count) + " blocks");
  return file;
}

inline SubspaceFile parse_subspace_file(const std::string& text) {
  std::istringstream is(text);
  return parse_subspace_file(is);
}

namespace detail {

inline void expect_geometry(const SubspaceFile& file, const Geometry& g, int k) {
  if (file.n != g.n() || file.q != g.q())
    throw DimensionMismatch("file is for PG(" + std::to_string(file.n) + "," + std::to_string(file.q) +
                            "), geometry is PG(" + std::to_string(g.n()) + "," + std::to_string(g.q()) + ")");
  if (file.k != k)
    throw DimensionMismatch("file holds k=" + std::to_string(file.k) + " subspaces, need k=" + std::to_string(k));
}

} // namespace detail

inline PlaneSet to_plane_set(const SubspaceFile& file, const Geometry& g) {
  detail::expect_geometry(file, g, 3);
  PlaneSet set(g);
  for (const Subspace& s : file.blocks)
    set.insert(g.index_of(s));
  return set;
}

inline LineSpread to_line_spread(const SubspaceFile& file, const Geometry& g) {
  detail::expect_geometry(file, g, 2);
  LineSpread s{&g, {}, SpreadKind::Loaded};
  for (const Subspace& b : file.blocks)
    s.lines.push_back(g.index_of(b));
  std::ranges::sort(s.lines);
  validate(s);
  return s;
}

// Certificates: "GIS-CERT v1" then one "key = value" per line in a fixed
// order. Booleans are true/false; absent checks are omitted.

namespace detail {

struct KV {
  std::ostream& os;
  template <class T>
  KV& operator()(std::string_view key, const T& value) {
    os << key << " = " << value << '\n';
    return *this;
  }
  KV& b(std::string_view key, bool v) { return (*this)(key, v ? "true" : "false"); }
};

inline std::string join(const std::vector<Index>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

inline void write_verdict(KV& kv, const Verdict& v) {
  if (const auto* in = std::get_if<Intriguing>(&v)) {
    kv("verdict", "intriguing");
    kv("x", in->x)("x_prime", in->x_prime)("eigenvalue", in->eigenvalue());
    kv("eigenvalue_index", in->eigenvalue_index);
    kv.b("tight", in->tight);
    return;
  }
  const auto& ni = std::get<NotIntriguing>(v);
  kv("verdict", "not-intriguing")("reason", ni.reason)("witnesses", ni.witnesses.size());
  for (std::size_t i = 0; i < ni.witnesses.size(); ++i) {
    const Witness& w = ni.witnesses[i];
    kv("witness." + std::to_string(i),
       "plane=" + std::to_string(w.plane) + " in_set=" + (w.in_set ? "true" : "false") +
           " degree=" + std::to_string(w.degree) + " majority=" + std::to_string(w.expected));
  }
}

inline void write_profile(KV& kv, const std::string& key, const ProfileReport& p) {
  kv.b(key + ".holds", p.holds);
  kv(key + ".expected", p.expected.str())(key + ".min", p.min_count)(key + ".max", p.max_count);
  kv(key + ".failures", p.failure_count);
  if (!p.failures.empty())
    kv(key + ".failure_sample", join(p.failures));
}

} // namespace detail

inline void write_certificate(std::ostream& os, const Certificate& c) {
  os << "GIS-CERT v1\n";
  detail::KV kv{os};
  kv("graph", "grassmann")("n", c.n)("q", c.q)("size", c.size);
  kv("valency", c.spectrum.valency)("lambda1", c.spectrum.lambda1)("lambda2", c.spectrum.lambda2);
  kv("lambda3", c.spectrum.lambda3);
  detail::write_verdict(kv, c.verdict);

  const IdentityReport& id = c.identities;
  if (id.size_formula)
    kv.b("check.size_formula.holds", *id.size_formula);
  if (id.point_profile)
    detail::write_profile(kv, "check.point_profile", *id.point_profile);
  if (id.hyperplane_profile)
    detail::write_profile(kv, "check.hyperplane_profile", *id.hyperplane_profile);
  if (const auto& d = id.divisibility) {
    kv.b("check.divisibility.holds", d->passes());
    if (d->three_divides_n)
      kv.b("check.divisibility.theta2_divides_x", d->theta2_divides_x);
    if (d->n_even)
      kv.b("check.divisibility.square_divides_x", d->square_divides_x);
    if (d->n_odd)
      kv.b("check.divisibility.square_divides_theta_x", d->square_divides_theta_x);
  }
  if (const auto& s = id.solids) {
    kv.b("check.solids.identity_holds", s->identity_holds);
    if (!s->identity_failures.empty())
      kv("check.solids.identity_failure_sample", detail::join(s->identity_failures));
    std::map<int, std::size_t> beta_hist;
    for (const auto& p : s->profiles)
      ++beta_hist[p.beta];
    std::string hist;
    for (auto [beta, cnt] : beta_hist)
      hist += (hist.empty() ? "" : ",") + std::to_string(beta) + ":" + std::to_string(cnt);
    kv("check.solids.beta_histogram", hist);
    kv.b("check.solids.solids_zero_or_q1", s->solids_zero_or_q1);
    kv.b("check.solids.lines_zero_or_q1", s->lines_zero_or_q1);
    kv("check.solids.isolated_full_solids", detail::join(s->isolated_full_solids));
    kv("check.solids.isolated_full_lines", detail::join(s->isolated_full_lines));
  }
  if (const auto& f = id.full_lines) {
    kv("check.full_lines.count", f->full_lines.size());
    kv.b("check.full_lines.pairwise_skew", f->pairwise_skew);
    kv.b("check.full_lines.every_plane_has_full_line", f->every_plane_has_full_line);
    kv.b("check.full_lines.forms_spread", f->forms_spread);
    kv.b("check.full_lines.based_on_spread", f->based_on_spread);
    if (f->below_spread_threshold)
      kv.b("check.full_lines.below_spread_threshold", *f->below_spread_threshold);
  }
  for (std::size_t i = 0; i < id.skipped.size(); ++i)
    kv("skipped." + std::to_string(i), id.skipped[i]);
}

inline void write_certificate(std::ostream& os, const DualPolarCertificate& c) {
  os << "GIS-CERT v1\n";
  detail::KV kv{os};
  kv("graph", "dual-polar")("n", 5)("q", c.q)("size", c.size);
  kv("vertices", c.vertex_count)("valency", c.degree);
  kv("lambda1", c.spectrum.lambda1)("lambda2", c.spectrum.lambda2)("lambda3", c.spectrum.lambda3);
  detail::write_verdict(kv, c.verdict);
  kv("expected_eigenvalue", c.expected_difference);
  kv.b("matches_expected", c.matches_expected);
  kv.b("size_matches_spread", c.size_matches_spread);
}

template <class Cert>
std::string certificate_text(const Cert& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

} // namespace gis
