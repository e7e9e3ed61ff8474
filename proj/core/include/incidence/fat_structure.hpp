#pragma once

// Reporting structure for fat triangles (every interior angle at least delta).
//
// Points are rescaled into [0,1)^2 and indexed three times, once per shift of
// the quadtree grid. Each stratum is a binary tree: a node splits its points
// by the centroid square s into the points inside s and the rest. A query
// triangle is routed to the stratum whose shifted grid aligns it and then
// walks down: triangles inside s go to the inside child, triangles missing s
// go to the outside child, and a triangle meeting the boundary of s is
// answered at the node. Alignment makes such a triangle large compared with
// s, so it contains a point of a fixed grid around s; splitting the triangle
// around that stabbing point gives triangles with a vertex at the stabber,
// which become curtain queries after a projective map.
//
// Curtain structures are built lazily per (stratum, node, stabber) and cached;
// queries are safe to run concurrently.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "incidence/curtain_structure.hpp"
#include "incidence/geom.hpp"
#include "incidence/graph.hpp"
#include "incidence/quadtree.hpp"

namespace incidence {

struct FatOptions {
  double delta = std::numbers::pi / 6;  // minimum interior angle of queries
  std::size_t leaf_size = 8;
  int max_level = 60;  // centroid descent cap; deeper nodes become leaves
  std::size_t curtain_leaf = 4;
};

struct FatQueryStats {
  std::uint64_t tree_nodes = 0;
  std::uint64_t curtain_visits = 0;
  std::uint64_t stabber_tests = 0;
  std::uint64_t leaf_tests = 0;  // points tested one by one
  std::uint64_t reported = 0;
  int stratum = -1;            // -1 when no shift aligns the query
  bool brute_force = false;    // crossing node without a stabbing point

  std::uint64_t visits() const { return tree_nodes + curtain_visits; }
};

struct FatStratumStats {
  int stratum = 0;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t capped_leaves = 0;
  std::size_t depth = 0;
  std::uint64_t stored_entries = 0;  // sum of |P_node|
};

/// Splits of |P| at the nodes: (points, inside, outside) per internal node.
struct FatSplit {
  std::size_t points = 0, inside = 0, outside = 0;
};

class FatReportStructure {
 public:
  explicit FatReportStructure(std::vector<Point> points, FatOptions options = {});
  FatReportStructure(const FatReportStructure&) = delete;
  FatReportStructure& operator=(const FatReportStructure&) = delete;

  /// Indices of the points inside t (closed), ascending. Throws InvalidInput
  /// for degenerate triangles and for angles below delta (with the measured
  /// angle in the message).
  std::vector<Index> query(const Triangle& t, FatQueryStats* stats = nullptr) const;

  std::size_t size() const { return points_.size(); }
  const FatOptions& options() const { return options_; }

  /// Node-point entries over the three strata plus the unaligned fallback root.
  std::uint64_t stored_entries() const;
  /// Entries of the curtain structures materialized so far.
  std::uint64_t curtain_entries() const;
  std::size_t curtain_structures() const;
  /// Crossing nodes answered by brute force because no stabber was found.
  std::uint64_t integrity_events() const { return integrity_events_.load(); }
  std::size_t depth() const;

  const std::vector<FatStratumStats>& strata_stats() const { return stratum_stats_; }
  std::vector<FatSplit> splits() const;

  static std::string stats_csv_header();
  std::string stats_csv() const;

 private:
  struct Node {
    QuadtreeSquare square;
    std::vector<Index> points;
    int inside = -1, outside = -1;
    bool leaf = true;
  };
  struct Stratum {
    std::vector<Point> frame;  // coordinates of every point in this stratum's frame
    std::vector<Node> nodes;
  };
  struct Pack {
    std::unique_ptr<CurtainStructure> right, left;
    std::vector<Index> right_ids, left_ids, axis_ids;
    std::uint64_t entries = 0;
  };
  using PackKey = std::tuple<int, int, std::int64_t, std::int64_t>;

  int build(Stratum& st, FatStratumStats& stats, std::vector<Index> ids, std::size_t depth);
  Point normalize(const Point& p) const;
  void walk(int stratum, const Triangle& t, std::vector<Index>& out, FatQueryStats& st) const;
  void answer_crossing(int stratum, int node, const Triangle& t, std::vector<Index>& out,
                       FatQueryStats& st) const;
  std::shared_ptr<const Pack> pack(int stratum, int node, std::int64_t mx, std::int64_t my,
                                   const Point& stabber) const;

  std::vector<Point> points_;
  FatOptions options_;
  std::uint64_t q_ = 16;
  Rational origin_x_, origin_y_, scale_;
  std::vector<Stratum> strata_;  // three shifts, then the unaligned fallback root
  std::vector<FatStratumStats> stratum_stats_;

  mutable std::mutex cache_mutex_;
  mutable std::map<PackKey, std::shared_ptr<const Pack>> cache_;
  mutable std::atomic<std::uint64_t> integrity_events_{0};
};

/// Relation of a triangle to a half-open square.
enum class SquareRelation { inside, disjoint, crossing };
SquareRelation classify(const Triangle& t, const QuadtreeSquare& s);

}  // namespace incidence
