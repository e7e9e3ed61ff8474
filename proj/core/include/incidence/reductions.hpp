#pragma once

// Incidence-preserving transforms between range families. Each reduction
// returns the transformed instance split into parts, together with index
// maps back to the source. certify() recomputes both sides by brute force
// and checks that the projected target edges equal the source edges.

#include <optional>
#include <string>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/graph.hpp"

namespace incidence {

/// One independent target instance. Target point i stands for source point
/// point_map[i] and target range j for source range range_map[j]. When
/// `swapped` is set, target points stand for source ranges and target
/// ranges for source points.
struct ReductionPart {
  std::string label;
  std::vector<Point> points;
  std::vector<Range> ranges;
  std::vector<Index> point_map;
  std::vector<Index> range_map;
  bool swapped = false;
};

struct ReductionCertificate {
  std::string reduction;
  std::string source_id;
  std::string target_id;
  std::string point_map;  // description of the point map
  std::string range_map;  // description of the range map
  std::vector<std::string> notes;  // reflections, sign cells, derived constants
  std::uint64_t source_edges = 0;
  std::uint64_t target_edges = 0;
  bool verified = false;
};

struct ReductionResult {
  std::vector<Point> source_points;
  std::vector<Range> source_ranges;
  std::vector<ReductionPart> parts;
  /// Incidences settled directly instead of through a part (source indices).
  std::vector<Edge> direct_edges;
  ReductionCertificate certificate;

  /// Union of the part edges mapped back to source indices, plus direct edges.
  std::vector<Edge> projected_edges() const;
};

/// Runs both oracles and fills in the certificate. Returns `verified`.
bool certify(ReductionResult& result);

/// Points p -> (v_1 . p, ..., v_delta . p); every facet normal must be a
/// nonzero multiple of some v_j, and the polyhedron becomes the box of its
/// per-direction offsets.
ReductionResult polyhedra_to_boxes(const std::vector<std::vector<Rational>>& normals, const std::vector<Point>& points,
                                   const std::vector<Polyhedron>& polys);

/// 3-sided rectangles (exactly one infinite side) to 3D orthants. Each
/// orientation is reflected onto [a,b] x (-inf,h] and becomes its own part:
/// p -> (-p_x, p_x, p_y), [a,b] x (-inf,h] -> (-inf,-a] x (-inf,b] x (-inf,h].
ReductionResult threesided_to_orthants(const std::vector<Point>& points, const std::vector<Box>& rects);

/// Orthants (every axis has at most one finite side) to halfspaces. After
/// reflecting onto (-inf, q] per axis and replacing coordinates by ranks,
/// p -> (4^rank(p_i)) and the orthant becomes sum_i x_i / 4^rank(q_i) <= 3,
/// with weight 0 on axes that are unbounded on both sides.
ReductionResult orthants_to_halfspaces(const std::vector<Point>& points, const std::vector<Box>& orthants);

/// Paraboloid lifting: points to (p, |p|^2), balls to lower halfspaces.
ReductionResult balls_to_halfspaces(const std::vector<Point>& points, const std::vector<Ball>& balls);

/// p -> (p_x^2, p_y^2, p_x p_y, p_x, p_y); the line y = a x + b becomes
/// a^2 x1 + x2 - 2a x3 + 2ab x4 - 2b x5 <= eps - b^2, where eps is half the
/// smallest squared vertical residual over non-incident pairs.
ReductionResult pointline_to_5d(const std::vector<Point>& points, const std::vector<Line>& lines);

/// The exact eps used by pointline_to_5d.
Rational pointline_epsilon(const std::vector<Point>& points, const std::vector<Line>& lines);

/// 3D wedge duality: wedge (a,b,c) -> point (a,-b,-c), point (x,y,z) ->
/// wedge (x,-y,-z). Points and ranges trade places.
ReductionResult wedge_duality(const std::vector<Point>& points, const std::vector<Wedge>& wedges);

/// 2D wedge {y <= ax+b, x <= c} -> 3D wedge {y <= ax+b, z <= c}; p -> (p_x, p_y, p_x).
ReductionResult wedge_lift(const std::vector<Point>& points, const std::vector<Wedge>& wedges);

/// A triangle with one vertex at the origin, given by the other two vertices
/// u, w in counterclockwise order (cross(u, w) = D > 0).
struct OriginPiece {
  Point u, w;
  Rational D;
};

/// Splits a triangle containing `origin` into at most three non-degenerate
/// origin pieces (coordinates relative to origin). Throws InvalidInput when
/// the origin lies outside the triangle and Unsupported for degenerate
/// triangles.
std::vector<OriginPiece> origin_pieces(const Triangle& t, const Point& origin);

enum class SignCell { right, left };

/// Relative point with x != 0 to curtain space: right cell (x > 0) maps to
/// (y/x, -1/x); left cell reflects x -> -x first.
Point to_curtain_space(const Point& rel, SignCell cell);

/// Image of a piece inside one cell, or nullopt when the piece misses that
/// open half-plane.
std::optional<Curtain> piece_curtain(const OriginPiece& piece, SignCell cell);

/// Triangles containing the origin to curtains, one part per sign cell of
/// x. Points with x = 0 are decided directly and reported as direct edges.
ReductionResult origin_triangle_to_curtain(const std::vector<Point>& points, const std::vector<Triangle>& triangles,
                                           const Point& origin = Point{0, 0});

/// Names accepted by apply_reduction / the CLI.
const std::vector<std::string>& reduction_names();

}  // namespace incidence
