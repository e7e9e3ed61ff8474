#pragma once

// Quadtree squares on the infinite dyadic grid, alignment of shapes, the
// three-shift trick, centroid squares and stabbing grids.
//
// A quadtree square at level l is [i/2^l, (i+1)/2^l) x [j/2^l, (j+1)/2^l).
// Levels may be negative (squares of side 2, 4, ...) so that shapes shifted
// by (1/3, 1/3) or (2/3, 2/3) out of the unit square still live on the grid.

#include <cstdint>
#include <optional>
#include <vector>

#include "incidence/geom.hpp"

namespace incidence {

struct QuadtreeSquare {
  int level = 0;
  std::int64_t i = 0, j = 0;

  Rational side() const;
  Rational x0() const;
  Rational y0() const;
  /// Half-open containment.
  bool contains(const Point& p) const;
  /// The child quadrant (qx, qy in {0, 1}).
  QuadtreeSquare child(int qx, int qy) const;

  friend bool operator==(const QuadtreeSquare&, const QuadtreeSquare&) = default;
};

/// The square at `level` containing p.
QuadtreeSquare square_at(const Point& p, int level);

/// Squared diameter of a finite point set (max pairwise squared distance).
Rational diameter2(const std::vector<Point>& shape);

/// Largest level l whose side 2^-l is at least 4 * diameter, i.e. the side
/// is 4r rounded up to a power of two. Requires a positive diameter.
int alignment_level(const Rational& diam2);

/// The square at alignment_level containing the whole shape (given by its
/// vertices, so its convex hull is tested), if there is one.
std::optional<QuadtreeSquare> aligned_square(const std::vector<Point>& shape);

/// Same check for shapes inside [0,1)^2; throws InvalidInput otherwise.
bool is_aligned(const std::vector<Point>& shape);

/// The shifts (0,0), (1/3,1/3), (2/3,2/3) as index 0, 1, 2.
Rational shift_value(int shift_index);
std::vector<Point> shifted(const std::vector<Point>& shape, int shift_index);

/// First shift index under which the shape is aligned, or nullopt.
std::optional<int> find_shift(const std::vector<Point>& shape);

/// Like find_shift for shapes inside [0,1)^2, where a shift always exists;
/// throws IntegrityError if none works and InvalidInput outside the square.
int shift_align(const std::vector<Point>& shape);

struct CentroidResult {
  QuadtreeSquare square;
  std::size_t inside = 0;
  /// The descent stopped at the level cap (coincident points); no square
  /// separates the points and the caller should stop splitting.
  bool capped = false;
};

/// Smallest quadtree square with at least n/5 of the points inside, found by
/// descending from the level -3 square into the heaviest child while that
/// child still holds at least n/5 points. Every child of the result holds
/// fewer than n/5 points, so inside < 4n/5 and outside <= 4n/5. Points must be
/// nonnegative and share one level -3 square.
CentroidResult centroid_square(const std::vector<Point>& points, int max_level = 60);

/// Grid resolution q: the smallest power of two with q >= 8 / delta.
std::uint64_t stabbing_resolution(double delta);

/// Stabbing grid around s: spacing h = side/q over s dilated by side/4,
/// i.e. the points x0 + (a - q/4) h, y0 + (c - q/4) h for a, c in [0, 3q/2].
std::vector<Point> stabbing_points(const QuadtreeSquare& s, double delta);

/// Smallest interior angle of a triangle in radians (floating point).
double min_angle(const Triangle& t);

}  // namespace incidence
