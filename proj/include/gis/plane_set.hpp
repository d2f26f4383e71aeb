#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "geometry.hpp"

namespace gis {

/// A set of planes of one Geometry, as a dense bitset over plane indexes.
class PlaneSet {
public:
  explicit PlaneSet(const Geometry& g) : geom_(&g), bits_(g.plane_count()) {}

  template <class Range>
  PlaneSet(const Geometry& g, const Range& indexes) : PlaneSet(g) {
    for (auto i : indexes)
      insert(Index(i));
  }

  static PlaneSet all(const Geometry& g) {
    PlaneSet s(g);
    s.bits_.set();
    s.count_ = s.bits_.size();
    return s;
  }

  const Geometry& geometry() const noexcept { return *geom_; }

  bool contains(Index p) const {
    check(p);
    return bits_.test(std::size_t(p));
  }

  void insert(Index p) {
    check(p);
    if (!bits_.test(std::size_t(p))) {
      bits_.set(std::size_t(p));
      ++count_;
    }
  }

  void erase(Index p) {
    check(p);
    if (bits_.test(std::size_t(p))) {
      bits_.reset(std::size_t(p));
      --count_;
    }
  }

  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool full() const noexcept { return count_ == bits_.size(); }

  std::vector<Index> indexes() const {
    std::vector<Index> out;
    out.reserve(count_);
    for (auto i = bits_.find_first(); i != bits_.npos; i = bits_.find_next(i))
      out.push_back(Index(i));
    return out;
  }

  PlaneSet complement() const {
    PlaneSet c(*geom_);
    c.bits_ = ~bits_;
    c.count_ = bits_.size() - count_;
    return c;
  }

  // Unchecked membership for inner loops.
  bool test(Index p) const noexcept { return bits_.test(std::size_t(p)); }

  friend bool operator==(const PlaneSet& a, const PlaneSet& b) noexcept {
    return a.geom_ == b.geom_ && a.bits_ == b.bits_;
  }

private:
  void check(Index p) const {
    if (p < 0 || std::size_t(p) >= bits_.size())
      throw IndexOutOfRange("plane index " + std::to_string(p) + " out of range");
  }

  const Geometry* geom_;
  boost::dynamic_bitset<> bits_;
  std::size_t count_ = 0;
};

/// Number of planes of `s` on each line of the geometry.
inline std::vector<int> line_counts(const PlaneSet& s) {
  const Geometry& g = s.geometry();
  std::vector<int> counts(g.lines().size(), 0);
  for (Index p : s.indexes())
    for (Index l : g.plane_lines(p))
      ++counts[std::size_t(l)];
  return counts;
}

/// Number of planes of `s` through each point of the geometry.
inline std::vector<int> point_counts(const PlaneSet& s) {
  const Geometry& g = s.geometry();
  std::vector<int> counts(g.points().size(), 0);
  for (Index p : s.indexes())
    for (Index pt : g.plane_points(p))
      ++counts[std::size_t(pt)];
  return counts;
}

} // namespace gis
