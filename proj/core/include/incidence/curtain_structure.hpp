#pragma once

// Reporting structure for curtains {y <= a x + b, lo <= x <= hi}.
//
// Points are sorted by x and stored in a segment tree whose nodes keep their
// points sorted by y. A query decomposes [lo, hi] into canonical nodes. Within
// a node the line is bounded below by its value at one end of the node's x
// extent, so every point at or under that floor is reported from a prefix of
// the y order; only the band between the floor and the line's maximum is
// refined in the children.

#include <cstdint>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/graph.hpp"

namespace incidence {

struct CurtainQueryStats {
  std::uint64_t visits = 0;     // segment tree nodes touched
  std::uint64_t canonical = 0;  // canonical nodes of [lo, hi]
  std::uint64_t tested = 0;     // points tested one by one in leaves
  std::uint64_t reported = 0;
};

class CurtainStructure {
 public:
  explicit CurtainStructure(std::vector<Point> points, std::size_t leaf_size = 4);

  /// Indices (into the constructor's points) inside the curtain, ascending.
  std::vector<Index> query(const Curtain& c, CurtainQueryStats* stats = nullptr) const;

  std::size_t size() const { return points_.size(); }
  /// Node-point entries over all segment tree nodes.
  std::uint64_t entries() const { return entries_; }
  std::size_t depth() const { return depth_; }

 private:
  struct Node {
    std::size_t lo = 0, hi = 0;  // positions [lo, hi) in x order
    std::vector<std::uint32_t> by_y;  // point ids sorted by y
    int left = -1, right = -1;
  };

  int build(std::size_t lo, std::size_t hi, std::size_t depth);
  void canonical(int node, std::size_t lo, std::size_t hi, std::vector<int>& out, CurtainQueryStats& st) const;
  void report(int node, const Curtain& c, const Rational* floor, std::vector<Index>& out,
              CurtainQueryStats& st) const;

  std::vector<Point> points_;
  std::vector<std::uint32_t> by_x_;  // x order of point ids
  std::vector<Node> nodes_;
  std::size_t leaf_size_;
  std::uint64_t entries_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace incidence
