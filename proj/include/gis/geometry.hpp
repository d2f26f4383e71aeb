#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "counting.hpp"
#include "field.hpp"
#include "parallel.hpp"
#include "subspace.hpp"

namespace gis {

using Index = std::int32_t; // plane counts stay below 2^31 for every buildable (n,q)

/// Compressed incidence lists: row i is a sorted span of indexes.
class Incidence {
public:
  Incidence() = default;

  // Transposes a fixed-stride relation: element j of row i of `rows` gives an
  // entry i in row `rows[i*stride+j]` of the result.
  static Incidence transpose(const std::vector<Index>& rows, std::size_t stride,
                             std::size_t targets) {
    Incidence inc;
    inc.offsets_.assign(targets + 1, 0);
    for (Index t : rows)
      ++inc.offsets_[std::size_t(t) + 1];
    for (std::size_t i = 0; i < targets; ++i)
      inc.offsets_[i + 1] += inc.offsets_[i];
    inc.data_.resize(rows.size());
    std::vector<std::size_t> fill(inc.offsets_.begin(), inc.offsets_.end() - 1);
    for (std::size_t k = 0; k < rows.size(); ++k)
      inc.data_[fill[std::size_t(rows[k])]++] = Index(k / stride);
    return inc;
  }

  static Incidence fixed(std::vector<Index> data, std::size_t stride) {
    Incidence inc;
    const std::size_t rows = stride ? data.size() / stride : 0;
    inc.offsets_.resize(rows + 1);
    for (std::size_t i = 0; i <= rows; ++i)
      inc.offsets_[i] = i * stride;
    inc.data_ = std::move(data);
    return inc;
  }

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  std::span<const Index> operator[](std::size_t i) const noexcept {
    return {data_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

private:
  std::vector<std::size_t> offsets_;
  std::vector<Index> data_;
};

struct BuildOptions {
  std::uint64_t max_planes = 200000; // ResourceLimit above this
  unsigned threads = 0;              // 0: default_threads()
};

/// Frozen enumeration of PG(n,q) for 5 <= n <= 7: points, lines, planes,
/// hyperplanes (and solids when n = 5) in sorted RREF order, with the
/// incidence indexes the certifiers need. Read-only after construction.
class Geometry {
public:
  Geometry(int n, int q, BuildOptions opts = {}) : n_(n), field_(q), opts_(opts) {
    if (n < 5 || n > 7)
      throw InvalidArgs("geometry: need 5 <= n <= 7, got n=" + std::to_string(n));
    const BigInt plane_count = gauss_binom(n + 1, 3, q);
    if (plane_count > BigInt(opts.max_planes))
      throw ResourceLimit("PG(" + std::to_string(n) + "," + std::to_string(q) + ") has " +
                          plane_count.str() + " planes, above the ceiling of " +
                          std::to_string(opts.max_planes));
    build();
  }

  Geometry(const Geometry&) = delete;
  Geometry& operator=(const Geometry&) = delete;

  int n() const noexcept { return n_; }
  int q() const noexcept { return field_.order(); }
  const Field& field() const noexcept { return field_; }
  unsigned threads() const noexcept { return opts_.threads; }

  const std::vector<Subspace>& points() const noexcept { return points_; }
  const std::vector<Subspace>& lines() const noexcept { return lines_; }
  const std::vector<Subspace>& planes() const noexcept { return planes_; }
  const std::vector<Subspace>& solids() const noexcept { return solids_; }
  const std::vector<Subspace>& hyperplanes() const noexcept { return hyperplanes_; }
  bool has_solids() const noexcept { return n_ == 5; }

  std::size_t plane_count() const noexcept { return planes_.size(); }

  /// Index of `s` in the list matching its dimension, or -1.
  Index index_of(const Subspace& s) const {
    const auto* map = map_for(s.dim());
    if (!map || s.ambient() != n_ + 1)
      return -1;
    auto it = map->find(s);
    return it == map->end() ? -1 : it->second;
  }

  /// Points or planes per plane / lines per plane: theta_2.
  int theta2() const noexcept { return theta2_; }
  /// Planes on a line: theta_{n-2}.
  int planes_per_line() const noexcept { return planes_per_line_; }

  std::span<const Index> plane_points(Index p) const noexcept { return plane_points_[std::size_t(p)]; }
  std::span<const Index> plane_lines(Index p) const noexcept { return plane_lines_[std::size_t(p)]; }
  std::span<const Index> line_points(Index l) const noexcept { return line_points_[std::size_t(l)]; }
  std::span<const Index> line_planes(Index l) const noexcept { return line_planes_[std::size_t(l)]; }
  std::span<const Index> point_planes(Index pt) const noexcept { return point_planes_[std::size_t(pt)]; }
  std::span<const Index> hyperplane_planes(Index h) const noexcept {
    return hyperplane_planes_[std::size_t(h)];
  }
  std::span<const Index> solid_planes(Index s) const noexcept { return solid_planes_[std::size_t(s)]; }

private:
  using Map = std::unordered_map<Subspace, Index, SubspaceHash>;

  const Map* map_for(int dim) const noexcept {
    if (dim == 1)
      return &point_ix_;
    if (dim == 2)
      return &line_ix_;
    if (dim == 3)
      return &plane_ix_;
    if (dim == 4 && has_solids())
      return &solid_ix_;
    if (dim == n_)
      return &hyperplane_ix_;
    return nullptr;
  }

  static Map index_map(const std::vector<Subspace>& list) {
    Map m;
    m.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i)
      m.emplace(list[i], Index(i));
    return m;
  }

  // Row i lists the indexes of the sub-subspaces of owners[i] whose
  // coefficient matrices are `coeffs`, looked up in `target`.
  std::vector<Index> contained(const std::vector<Subspace>& owners,
                               const std::vector<Subspace>& coeffs, const Map& target) const {
    const std::size_t stride = coeffs.size();
    std::vector<Index> out(owners.size() * stride);
    parallel_for(owners.size(), opts_.threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        for (std::size_t j = 0; j < stride; ++j) {
          auto it = target.find(compose(coeffs[j], owners[i], field_));
          if (it == target.end())
            throw std::logic_error("geometry: sub-subspace missing from enumeration");
          out[i * stride + j] = it->second;
        }
    });
    return out;
  }

  static void expect(bool ok, const char* what) {
    if (!ok)
      throw std::logic_error(std::string("geometry invariant violated: ") + what);
  }

  void build() {
    const int q = field_.order();
    const int v = n_ + 1;
    points_ = enumerate_rref(1, v, field_);
    lines_ = enumerate_rref(2, v, field_);
    planes_ = enumerate_rref(3, v, field_);
    hyperplanes_ = enumerate_rref(n_, v, field_);
    if (has_solids())
      solids_ = enumerate_rref(4, v, field_);

    expect(BigInt(points_.size()) == theta(n_, q), "|points| = theta_n");
    expect(BigInt(lines_.size()) == gauss_binom(v, 2, q), "|lines| = [n+1,2]");
    expect(BigInt(planes_.size()) == gauss_binom(v, 3, q), "|planes| = [n+1,3]");
    expect(BigInt(hyperplanes_.size()) == theta(n_, q), "|hyperplanes| = theta_n");
    if (has_solids())
      expect(BigInt(solids_.size()) == gauss_binom(v, 4, q), "|solids| = [n+1,4]");

    point_ix_ = index_map(points_);
    line_ix_ = index_map(lines_);
    plane_ix_ = index_map(planes_);
    hyperplane_ix_ = index_map(hyperplanes_);
    if (has_solids())
      solid_ix_ = index_map(solids_);

    theta2_ = int(to_i64(theta(2, q)));
    planes_per_line_ = int(to_i64(theta(n_ - 2, q)));

    const auto pts_in_line = enumerate_rref(1, 2, field_);
    const auto pts_in_plane = enumerate_rref(1, 3, field_);
    const auto lines_in_plane = enumerate_rref(2, 3, field_);

    line_points_ = Incidence::fixed(contained(lines_, pts_in_line, point_ix_), pts_in_line.size());
    auto pp = contained(planes_, pts_in_plane, point_ix_);
    auto pl = contained(planes_, lines_in_plane, line_ix_);
    point_planes_ = Incidence::transpose(pp, pts_in_plane.size(), points_.size());
    line_planes_ = Incidence::transpose(pl, lines_in_plane.size(), lines_.size());
    plane_points_ = Incidence::fixed(std::move(pp), pts_in_plane.size());
    plane_lines_ = Incidence::fixed(std::move(pl), lines_in_plane.size());

    const auto planes_in_hyperplane = enumerate_rref(3, n_, field_);
    hyperplane_planes_ = Incidence::fixed(contained(hyperplanes_, planes_in_hyperplane, plane_ix_),
                                          planes_in_hyperplane.size());
    if (has_solids()) {
      const auto planes_in_solid = enumerate_rref(3, 4, field_);
      solid_planes_ =
          Incidence::fixed(contained(solids_, planes_in_solid, plane_ix_), planes_in_solid.size());
    }

    // Cross-validate the incidence indexes against the Gaussian coefficients.
    const auto planes_per_point = std::size_t(to_i64(gauss_binom(n_, 2, q)));
    const auto planes_per_hyperplane = std::size_t(to_i64(gauss_binom(n_, 3, q)));
    expect(lines_in_plane.size() == std::size_t(theta2_), "lines per plane = theta_2");
    for (std::size_t l = 0; l < lines_.size(); ++l)
      expect(line_planes_[l].size() == std::size_t(planes_per_line_),
             "planes per line = theta_{n-2}");
    for (std::size_t p = 0; p < points_.size(); ++p)
      expect(point_planes_[p].size() == planes_per_point, "planes per point = [n,2]");
    expect(planes_in_hyperplane.size() == planes_per_hyperplane, "planes per hyperplane = [n,3]");
  }

  int n_;
  Field field_;
  BuildOptions opts_;

  std::vector<Subspace> points_, lines_, planes_, solids_, hyperplanes_;
  Map point_ix_, line_ix_, plane_ix_, solid_ix_, hyperplane_ix_;
  int theta2_ = 0;
  int planes_per_line_ = 0;

  Incidence plane_points_, plane_lines_, line_points_, line_planes_, point_planes_;
  Incidence hyperplane_planes_, solid_planes_;
};

inline std::unique_ptr<const Geometry> build_geometry(int n, int q, BuildOptions opts = {}) {
  return std::make_unique<const Geometry>(n, q, opts);
}

} // namespace gis
