#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <vector>

namespace gis {

/// Dancing-links exact cover (Knuth's Algorithm X). Columns are the universe,
/// rows the candidate subsets; a solution is a set of rows covering every
/// column exactly once.
///
/// Column choice is minimum remaining candidates with ties broken uniformly at
/// random; candidate rows are tried in the order they were added, so callers
/// shuffle rows between restarts for diversity.
class ExactCover {
public:
  enum class Status { Found, Exhausted, Aborted };

  using Clock = std::chrono::steady_clock;

  ExactCover(int columns, const std::vector<std::vector<int>>& rows) {
    const int header = columns;
    nodes_.resize(std::size_t(columns) + 1);
    size_.assign(std::size_t(columns), 0);
    for (int c = 0; c <= columns; ++c) {
      Node& h = nodes_[std::size_t(c)];
      h.left = c == 0 ? header : c - 1;
      h.right = c == columns ? 0 : c + 1;
      h.up = h.down = c;
      h.col = c;
      h.row = -1;
    }
    // root is node `columns`; relink so the header list is root <-> 0..columns-1
    nodes_[std::size_t(header)].right = columns ? 0 : header;
    nodes_[std::size_t(header)].left = columns ? columns - 1 : header;
    if (columns) {
      nodes_[0].left = header;
      nodes_[std::size_t(columns - 1)].right = header;
    }
    root_ = header;

    for (std::size_t r = 0; r < rows.size(); ++r) {
      int first = -1;
      for (int c : rows[r]) {
        const int id = int(nodes_.size());
        Node x;
        x.col = c;
        x.row = int(r);
        x.down = c;
        x.up = nodes_[std::size_t(c)].up;
        nodes_.push_back(x);
        nodes_[std::size_t(nodes_[std::size_t(id)].up)].down = id;
        nodes_[std::size_t(c)].up = id;
        ++size_[std::size_t(c)];
        if (first < 0) {
          first = id;
          nodes_[std::size_t(id)].left = nodes_[std::size_t(id)].right = id;
        } else {
          Node& f = nodes_[std::size_t(first)];
          nodes_[std::size_t(id)].left = f.left;
          nodes_[std::size_t(id)].right = first;
          nodes_[std::size_t(f.left)].right = id;
          f.left = id;
        }
      }
    }
  }

  /// Searches until a solution is found, the tree is exhausted, `node_limit`
  /// rows have been tried, or `deadline` passes. On Found, `solution` holds
  /// the chosen row indexes.
  Status solve(std::mt19937_64& rng, std::uint64_t node_limit, Clock::time_point deadline,
               std::vector<int>& solution) {
    rng_ = &rng;
    limit_ = node_limit;
    deadline_ = deadline;
    visited_ = 0;
    aborted_ = false;
    stack_.clear();
    const bool ok = search();
    if (ok) {
      solution = stack_;
      return Status::Found;
    }
    return aborted_ ? Status::Aborted : Status::Exhausted;
  }

  std::uint64_t nodes_visited() const noexcept { return visited_; }

private:
  struct Node {
    int left = 0, right = 0, up = 0, down = 0;
    int col = 0, row = 0;
  };

  void cover(int c) {
    Node& h = nodes_[std::size_t(c)];
    nodes_[std::size_t(h.right)].left = h.left;
    nodes_[std::size_t(h.left)].right = h.right;
    for (int i = h.down; i != c; i = nodes_[std::size_t(i)].down)
      for (int j = nodes_[std::size_t(i)].right; j != i; j = nodes_[std::size_t(j)].right) {
        Node& x = nodes_[std::size_t(j)];
        nodes_[std::size_t(x.down)].up = x.up;
        nodes_[std::size_t(x.up)].down = x.down;
        --size_[std::size_t(x.col)];
      }
  }

  void uncover(int c) {
    Node& h = nodes_[std::size_t(c)];
    for (int i = h.up; i != c; i = nodes_[std::size_t(i)].up)
      for (int j = nodes_[std::size_t(i)].left; j != i; j = nodes_[std::size_t(j)].left) {
        Node& x = nodes_[std::size_t(j)];
        ++size_[std::size_t(x.col)];
        nodes_[std::size_t(x.down)].up = j;
        nodes_[std::size_t(x.up)].down = j;
      }
    nodes_[std::size_t(h.right)].left = c;
    nodes_[std::size_t(h.left)].right = c;
  }

  int choose_column() {
    int best = -1, best_size = 0, ties = 0;
    for (int c = nodes_[std::size_t(root_)].right; c != root_; c = nodes_[std::size_t(c)].right) {
      const int s = size_[std::size_t(c)];
      if (best < 0 || s < best_size) {
        best = c;
        best_size = s;
        ties = 1;
      } else if (s == best_size) {
        // reservoir sampling over the tied columns
        if (std::uniform_int_distribution<int>(0, ties)(*rng_) == 0)
          best = c;
        ++ties;
      }
      if (best_size == 0)
        break;
    }
    return best;
  }

  bool search() {
    if (nodes_[std::size_t(root_)].right == root_)
      return true;
    const int c = choose_column();
    if (size_[std::size_t(c)] == 0)
      return false;
    cover(c);
    for (int r = nodes_[std::size_t(c)].down; r != c; r = nodes_[std::size_t(r)].down) {
      if (++visited_ > limit_ || ((visited_ & 1023u) == 1 && Clock::now() > deadline_)) {
        aborted_ = true;
        break;
      }
      stack_.push_back(nodes_[std::size_t(r)].row);
      for (int j = nodes_[std::size_t(r)].right; j != r; j = nodes_[std::size_t(j)].right)
        cover(nodes_[std::size_t(j)].col);
      const bool done = search();
      if (done)
        return true; // leave the structure covered; it is discarded
      for (int j = nodes_[std::size_t(r)].left; j != r; j = nodes_[std::size_t(j)].left)
        uncover(nodes_[std::size_t(j)].col);
      stack_.pop_back();
      if (aborted_)
        break;
    }
    uncover(c);
    return false;
  }

  std::vector<Node> nodes_;
  std::vector<int> size_;
  int root_ = 0;
  std::vector<int> stack_;
  std::mt19937_64* rng_ = nullptr;
  std::uint64_t limit_ = 0;
  std::uint64_t visited_ = 0;
  Clock::time_point deadline_;
  bool aborted_ = false;
};

} // namespace gis
