#pragma once

// Exact geometric kernel: points, ranges, closed containment, duality and
// the paraboloid lifting. Every predicate is evaluated in exact rational
// arithmetic; ranges are closed (the boundary counts as incident).

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "incidence/rational.hpp"

namespace incidence {

struct Point {
  std::vector<Rational> coords;

  Point() = default;
  explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rational> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-parallel box; each side may be unbounded. Intervals, orthants and
/// 3-sided rectangles are boxes with the appropriate sides left open-ended.
struct Box {
  std::vector<Bound> lo;
  std::vector<Bound> hi;

  std::size_t dim() const { return lo.size(); }
};

Box make_box(std::vector<Bound> lo, std::vector<Bound> hi);
Box make_interval(Bound lo, Bound hi);

/// Non-vertical hyperplane x_d = offset + sum_i slopes[i] * x_i (i < d-1).
struct Hyperplane {
  std::vector<Rational> slopes;
  Rational offset;

  std::size_t dim() const { return slopes.size() + 1; }
};

/// Hyperplane normal . x = rhs in graph form; throws Unsupported when the
/// last normal coordinate vanishes (vertical hyperplane).
Hyperplane graph_form(const std::vector<Rational>& normal, const Rational& rhs);

/// Height of the hyperplane above the first d-1 coordinates of p.
Rational height(const Hyperplane& h, const Point& p);

enum class HalfspaceKind { upper, lower, general };

/// Upper: x_d >= plane(x). Lower: x_d <= plane(x).
/// General: normal . x <= rhs (less_equal) or normal . x >= rhs.
struct Halfspace {
  HalfspaceKind kind = HalfspaceKind::upper;
  Hyperplane plane;
  std::vector<Rational> normal;
  Rational rhs;
  bool less_equal = true;

  std::size_t dim() const { return kind == HalfspaceKind::general ? normal.size() : plane.dim(); }
};

Halfspace upper_halfspace(Hyperplane plane);
Halfspace lower_halfspace(Hyperplane plane);
Halfspace general_halfspace(std::vector<Rational> normal, Rational rhs, bool less_equal = true);

struct Ball {
  Point center;
  Rational radius2;

  std::size_t dim() const { return center.dim(); }
};

Ball make_ball(Point center, Rational radius2);

/// The planar line y = slope * x + intercept (a point is incident iff on it).
struct Line {
  Rational slope;
  Rational intercept;
};

/// dim 2: {y <= a x + b, x <= c}.  dim 3: {y <= a x + b, z <= c}.
struct Wedge {
  int dim = 2;
  Rational a, b, c;
};

/// {y <= a x + b, lo <= x <= hi}; a missing bound is infinite.
struct Curtain {
  Rational a, b;
  Bound lo, hi;
};

struct Triangle {
  std::array<Point, 3> v;
};

/// Intersection of closed halfspaces normal . x <= rhs.
struct Facet {
  std::vector<Rational> normal;
  Rational rhs;
};

struct Polyhedron {
  std::size_t dimension = 0;
  std::vector<Facet> facets;
};

using Range = std::variant<Box, Halfspace, Ball, Line, Wedge, Curtain, Triangle, Polyhedron>;

std::size_t dimension(const Range& range);
std::string type_name(const Range& range);

bool contains(const Box& box, const Point& p);
bool contains(const Halfspace& h, const Point& p);
bool contains(const Ball& b, const Point& p);
bool contains(const Line& l, const Point& p);
bool contains(const Wedge& w, const Point& p);
bool contains(const Curtain& c, const Point& p);
bool contains(const Triangle& t, const Point& p);
bool contains(const Polyhedron& poly, const Point& p);

/// Closed containment; throws InvalidInput on a dimension mismatch.
bool contains(const Range& range, const Point& p);

/// Twice the signed area of (a, b, c); positive for a counterclockwise turn.
Rational orient(const Point& a, const Point& b, const Point& c);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);
Rational squared_distance(const Point& a, const Point& b);

/// p lies on or above h.
bool above(const Point& p, const Hyperplane& h);
/// p lies on or below h.
bool below(const Point& p, const Hyperplane& h);

/// p -> p*: x_d = -p_d + sum_i x_i p_i.
Hyperplane dualize(const Point& p);
/// h: x_d = a_d + sum a_i x_i  ->  (a_1, ..., a_{d-1}, -a_d).
Point dualize(const Hyperplane& h);

/// p -> (p, |p|^2).
Point lift(const Point& p);
/// |x - c|^2 <= r^2  ->  x_{d+1} <= 2 c . x + r^2 - |c|^2 (a lower halfspace).
Halfspace lift_ball(const Ball& b);

}  // namespace incidence
