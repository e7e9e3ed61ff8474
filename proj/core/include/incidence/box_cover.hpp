#pragma once

// Biclique covers for box ranges via the range-tree style decomposition:
// sort by one axis, split every box's point slab into canonical dyadic
// classes, and recurse on the remaining axes inside each class.

#include <cstdint>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/graph.hpp"

namespace incidence {

/// Totals over all dyadic classes created while splitting on one axis.
struct CoverLevelLedger {
  unsigned axis = 0;
  std::size_t subproblems = 0;
  std::size_t classes = 0;
  /// Sum over classes of the class point count and class box count.
  std::uint64_t class_points = 0;
  std::uint64_t class_boxes = 0;
  /// Sum over subproblems of n_s * (ceil(log2 n_s) + 1), counting the root class.
  std::uint64_t point_bound = 0;
  /// Sum over subproblems of m_s * max(1, 2 ceil(log2 n_s)).
  std::uint64_t box_bound = 0;

  bool within_bounds() const { return class_points <= point_bound && class_boxes <= box_bound; }
};

struct BoxCoverResult {
  BicliqueCover cover;
  std::vector<CoverLevelLedger> levels;  // one entry per axis

  bool within_bounds() const;
};

/// Builds a cover of G(P, B). All boxes and points must share one dimension.
BoxCoverResult build_box_cover(const std::vector<Point>& points, const std::vector<Box>& boxes);

/// Mixed range list; throws Unsupported if any range is not a box of dimension d.
BoxCoverResult build_box_cover(const std::vector<Point>& points, const std::vector<Range>& ranges, std::size_t d);

}  // namespace incidence
