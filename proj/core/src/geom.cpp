#include "incidence/geom.hpp"

#include <algorithm>

namespace incidence {

namespace {

void require_dim(std::size_t expected, const Point& p, const char* what) {
  if (p.dim() != expected) {
    throw InvalidInput(std::string("dimension mismatch: ") + what + " has dimension " +
                       std::to_string(expected) + ", point has " + std::to_string(p.dim()));
  }
}

}  // namespace

Box make_box(std::vector<Bound> lo, std::vector<Bound> hi) {
  if (lo.size() != hi.size() || lo.empty()) throw InvalidInput("box bounds must have equal nonzero length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] && hi[i] && *lo[i] > *hi[i]) {
      throw InvalidInput("box lower bound exceeds upper bound on axis " + std::to_string(i));
    }
  }
  return Box{std::move(lo), std::move(hi)};
}

Box make_interval(Bound lo, Bound hi) { return make_box({std::move(lo)}, {std::move(hi)}); }

Hyperplane graph_form(const std::vector<Rational>& normal, const Rational& rhs) {
  if (normal.empty()) throw InvalidInput("empty hyperplane normal");
  const Rational& last = normal.back();
  if (last == 0) throw Unsupported("vertical hyperplane has no graph form");
  Hyperplane h;
  h.slopes.reserve(normal.size() - 1);
  for (std::size_t i = 0; i + 1 < normal.size(); ++i) h.slopes.push_back(Rational(-normal[i] / last));
  h.offset = rhs / last;
  return h;
}

Rational height(const Hyperplane& h, const Point& p) {
  require_dim(h.dim(), p, "hyperplane");
  Rational z = h.offset;
  for (std::size_t i = 0; i < h.slopes.size(); ++i) z += h.slopes[i] * p[i];
  return z;
}

Halfspace upper_halfspace(Hyperplane plane) {
  Halfspace h;
  h.kind = HalfspaceKind::upper;
  h.plane = std::move(plane);
  return h;
}

Halfspace lower_halfspace(Hyperplane plane) {
  Halfspace h;
  h.kind = HalfspaceKind::lower;
  h.plane = std::move(plane);
  return h;
}

Halfspace general_halfspace(std::vector<Rational> normal, Rational rhs, bool less_equal) {
  if (normal.empty()) throw InvalidInput("empty halfspace normal");
  Halfspace h;
  h.kind = HalfspaceKind::general;
  h.normal = std::move(normal);
  h.rhs = std::move(rhs);
  h.less_equal = less_equal;
  return h;
}

Ball make_ball(Point center, Rational radius2) {
  if (radius2 < 0) throw InvalidInput("ball radius^2 must be nonnegative");
  return Ball{std::move(center), std::move(radius2)};
}

std::size_t dimension(const Range& range) {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Box> || std::is_same_v<T, Halfspace> || std::is_same_v<T, Ball>) {
          return r.dim();
        } else if constexpr (std::is_same_v<T, Wedge>) {
          return static_cast<std::size_t>(r.dim);
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          return r.dimension;
        } else {
          return 2;
        }
      },
      range);
}

std::string type_name(const Range& range) {
  static const char* names[] = {"box", "halfspace", "ball", "line", "wedge", "curtain", "triangle", "polyhedron"};
  return names[range.index()];
}

bool contains(const Box& box, const Point& p) {
  require_dim(box.dim(), p, "box");
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (box.lo[i] && p[i] < *box.lo[i]) return false;
    if (box.hi[i] && p[i] > *box.hi[i]) return false;
  }
  return true;
}

bool above(const Point& p, const Hyperplane& h) { return p.coords.back() >= height(h, p); }
bool below(const Point& p, const Hyperplane& h) { return p.coords.back() <= height(h, p); }

bool contains(const Halfspace& h, const Point& p) {
  switch (h.kind) {
    case HalfspaceKind::upper:
      return above(p, h.plane);
    case HalfspaceKind::lower:
      return below(p, h.plane);
    case HalfspaceKind::general: {
      require_dim(h.normal.size(), p, "halfspace");
      const Rational v = dot(h.normal, p.coords);
      return h.less_equal ? v <= h.rhs : v >= h.rhs;
    }
  }
  return false;
}

bool contains(const Ball& b, const Point& p) {
  require_dim(b.dim(), p, "ball");
  return squared_distance(b.center, p) <= b.radius2;
}

bool contains(const Line& l, const Point& p) {
  require_dim(2, p, "line");
  return p[1] == l.slope * p[0] + l.intercept;
}

bool contains(const Wedge& w, const Point& p) {
  if (w.dim != 2 && w.dim != 3) throw InvalidInput("wedge dimension must be 2 or 3");
  require_dim(static_cast<std::size_t>(w.dim), p, "wedge");
  if (p[1] > w.a * p[0] + w.b) return false;
  return w.dim == 2 ? p[0] <= w.c : p[2] <= w.c;
}

bool contains(const Curtain& c, const Point& p) {
  require_dim(2, p, "curtain");
  if (c.lo && p[0] < *c.lo) return false;
  if (c.hi && p[0] > *c.hi) return false;
  return p[1] <= c.a * p[0] + c.b;
}

bool contains(const Triangle& t, const Point& p) {
  require_dim(2, p, "triangle");
  const Rational d0 = orient(t.v[0], t.v[1], p);
  const Rational d1 = orient(t.v[1], t.v[2], p);
  const Rational d2 = orient(t.v[2], t.v[0], p);
  const bool has_neg = sgn(d0) < 0 || sgn(d1) < 0 || sgn(d2) < 0;
  const bool has_pos = sgn(d0) > 0 || sgn(d1) > 0 || sgn(d2) > 0;
  if (has_neg && has_pos) return false;
  if (sgn(orient(t.v[0], t.v[1], t.v[2])) != 0) return true;
  // Degenerate triangle: p is collinear; restrict to the bounding box.
  for (int axis = 0; axis < 2; ++axis) {
    const auto [lo, hi] = std::minmax({t.v[0][axis], t.v[1][axis], t.v[2][axis]});
    if (p[axis] < lo || p[axis] > hi) return false;
  }
  return true;
}

bool contains(const Polyhedron& poly, const Point& p) {
  require_dim(poly.dimension, p, "polyhedron");
  for (const Facet& f : poly.facets) {
    if (dot(f.normal, p.coords) > f.rhs) return false;
  }
  return true;
}

bool contains(const Range& range, const Point& p) {
  return std::visit([&p](const auto& r) { return contains(r, p); }, range);
}

Rational orient(const Point& a, const Point& b, const Point& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw InvalidInput("dimension mismatch in dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational squared_distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in distance");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

Hyperplane dualize(const Point& p) {
  if (p.dim() < 1) throw InvalidInput("cannot dualize an empty point");
  Hyperplane h;
  h.slopes.assign(p.coords.begin(), p.coords.end() - 1);
  h.offset = -p.coords.back();
  return h;
}

Point dualize(const Hyperplane& h) {
  Point p;
  p.coords = h.slopes;
  p.coords.push_back(-h.offset);
  return p;
}

Point lift(const Point& p) {
  Point q = p;
  Rational norm2 = 0;
  for (const Rational& c : p.coords) norm2 += c * c;
  q.coords.push_back(norm2);
  return q;
}

Halfspace lift_ball(const Ball& b) {
  Hyperplane plane;
  Rational c2 = 0;
  for (const Rational& c : b.center.coords) {
    plane.slopes.push_back(2 * c);
    c2 += c * c;
  }
  plane.offset = b.radius2 - c2;
  return lower_halfspace(std::move(plane));
}

}  // namespace incidence
