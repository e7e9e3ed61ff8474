#pragma once

// Slab divide-and-conquer audits for rectangles and boxes. Each audit is an
// exact incidence counter whose recursion tree doubles as a ledger of the
// slab recurrences: per-node class counts, incidences attributed at the
// node, and (for boxes) the vertex budget handed to each child.
//
// All work happens in rank space. Every axis is sorted once with ties broken
// by point index, and a box becomes a rank interval per axis. A face of a box
// lies inside a slab when it separates two of the slab's points; a box that
// meets a slab without a face inside it spans the slab ("long").

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incidence/geom.hpp"

namespace incidence {

enum class SlabNodeKind { rect, box, leaf, interval, curtain };

struct SlabNode {
  SlabNodeKind kind = SlabNodeKind::rect;
  unsigned dims = 2;  // dimensions still active
  unsigned axis = 0;  // split axis (index into the original coordinates)
  std::uint64_t rank_lo = 0, rank_hi = 0;  // rank span of the node's points on `axis`
  std::size_t points = 0;
  std::size_t ranges = 0;
  // Class counts: inside some child / 3-sided in some slab / spanning some
  // slab / empty on the node's points. A range may be partial in one slab
  // and spanning in another; `three_sided` and `crossing` count slab-range pairs.
  std::size_t inside = 0;
  std::size_t three_sided = 0;
  std::size_t crossing = 0;
  std::size_t empty = 0;
  /// Distinct ranges counted at this node (m_0 for rectangles).
  std::size_t m0 = 0;
  /// Incidences counted directly at this node (not in children or projections).
  std::uint64_t attributed = 0;
  // Vertex accounting for boxes: v here, v_i in the children.
  std::uint64_t vertices = 0;
  std::uint64_t child_vertices = 0;
  bool vertices_ok = true;
  /// k n + b k m0 for rectangle nodes, k n + k m0 for curtain nodes, 0 elsewhere.
  double ledger_term = 0;

  std::vector<SlabNode> children;     // one per slab that received ranges
  std::vector<SlabNode> projections;  // (d-1)-dimensional audits of long boxes
};

struct AuditOptions {
  std::size_t b = 4;
  unsigned k = 2;
  bool check_oracle = false;  // also run incidences_bruteforce and compare
};

struct RecursionReport {
  SlabNode root;
  std::size_t b = 0;
  unsigned k = 0;
  std::uint64_t total = 0;  // sum of attributed over the whole tree
  std::optional<std::uint64_t> oracle;
  /// Largest attributed / ledger_term over nodes with a ledger term: the fitted constant.
  double fitted_constant = 0;
  bool vertices_ok = true;  // vertex conservation at every box node
  std::size_t nodes = 0;

  bool matches_oracle() const { return oracle && *oracle == total; }
  std::string to_json(int indent = 2) const;
  /// One row per node, depth first.
  std::string to_csv() const;
  static std::string csv_header();
};

/// Recomputes total, nodes, fitted_constant and vertices_ok from the tree.
void summarize(RecursionReport& report);

/// Rectangles in the plane: slabs with `b` points-balanced chunks; rectangles
/// completely inside one slab recurse, the rest are counted per slab as
/// 3-sided or spanning ranges with an exact offline sweep. Nodes with at most
/// b points are solved by brute force.
RecursionReport rect_audit(const std::vector<Point>& points, const std::vector<Box>& rects,
                           const AuditOptions& options = {});

/// Boxes in R^d, d >= 2: boxes with a face inside a slab recurse into it,
/// boxes spanning a slab are projected to d-1 dimensions there, and d = 2
/// falls through to the rectangle audit.
RecursionReport box_audit(const std::vector<Point>& points, const std::vector<Box>& boxes,
                          const AuditOptions& options = {});

}  // namespace incidence
