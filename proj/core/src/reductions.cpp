#include "incidence/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "incidence/instance_io.hpp"

namespace incidence {

namespace {

std::vector<Index> iota_map(std::size_t n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

template <class R>
std::vector<Range> as_ranges(const std::vector<R>& rs) {
  return std::vector<Range>(rs.begin(), rs.end());
}

template <class R>
ReductionResult start(const std::string& name, const std::vector<Point>& points, const std::vector<R>& ranges) {
  ReductionResult r;
  r.source_points = points;
  r.source_ranges = as_ranges(ranges);
  r.certificate.reduction = name;
  r.certificate.source_id = fingerprint(r.source_points, r.source_ranges);
  return r;
}

Rational cross(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

std::vector<Edge> ReductionResult::projected_edges() const {
  std::vector<Edge> out = direct_edges;
  for (const ReductionPart& part : parts) {
    const IncidenceGraph g = incidences_bruteforce(part.points, part.ranges);
    for (const Edge& e : g.edges) {
      if (part.swapped) {
        out.emplace_back(part.range_map[e.second], part.point_map[e.first]);
      } else {
        out.emplace_back(part.point_map[e.first], part.range_map[e.second]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool certify(ReductionResult& result) {
  const IncidenceGraph source = incidences_bruteforce(result.source_points, result.source_ranges);
  std::uint64_t target_edges = result.direct_edges.size();
  std::vector<Point> all_points;
  std::vector<Range> all_ranges;
  for (const ReductionPart& part : result.parts) {
    target_edges += incidences_bruteforce(part.points, part.ranges).incidences();
    all_points.insert(all_points.end(), part.points.begin(), part.points.end());
    all_ranges.insert(all_ranges.end(), part.ranges.begin(), part.ranges.end());
  }
  const std::vector<Edge> projected = result.projected_edges();
  ReductionCertificate& c = result.certificate;
  c.target_id = fingerprint(all_points, all_ranges);
  c.source_edges = source.incidences();
  c.target_edges = target_edges;
  // Pieces of one source range may overlap, so only the edge sets are compared.
  c.verified = projected == source.edges;
  return c.verified;
}

ReductionResult polyhedra_to_boxes(const std::vector<std::vector<Rational>>& normals, const std::vector<Point>& points,
                                   const std::vector<Polyhedron>& polys) {
  if (normals.empty()) throw InvalidInput("polyhedra_to_boxes needs at least one normal");
  const std::size_t d = normals.front().size();
  for (const auto& v : normals) {
    if (v.size() != d) throw InvalidInput("normals of mixed dimension");
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) {
      throw InvalidInput("zero normal in the direction list");
    }
  }
  ReductionResult r = start("polyhedra-to-boxes", points, polys);
  ReductionPart part;
  part.label = "boxes";
  for (const Point& p : points) {
    if (p.dim() != d) throw InvalidInput("point dimension does not match the normals");
    Point q;
    for (const auto& v : normals) q.coords.push_back(dot(v, p.coords));
    part.points.push_back(std::move(q));
  }
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    const Polyhedron& poly = polys[pi];
    if (poly.dimension != d) throw InvalidInput("polyhedron dimension does not match the normals");
    Box box;
    box.lo.assign(normals.size(), std::nullopt);
    box.hi.assign(normals.size(), std::nullopt);
    for (const Facet& f : poly.facets) {
      bool matched = false;
      for (std::size_t j = 0; j < normals.size() && !matched; ++j) {
        const auto& v = normals[j];
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        const Rational lambda = f.normal[lead] / v[lead];
        if (lambda == 0) continue;
        bool proportional = true;
        for (std::size_t i = 0; i < d && proportional; ++i) proportional = f.normal[i] == lambda * v[i];
        if (!proportional) continue;
        matched = true;
        const Rational offset = f.rhs / lambda;
        if (lambda > 0) {
          if (!box.hi[j] || offset < *box.hi[j]) box.hi[j] = offset;
        } else {
          if (!box.lo[j] || offset > *box.lo[j]) box.lo[j] = offset;
        }
      }
      if (!matched) throw InvalidInput("facet normal of polyhedron " + std::to_string(pi) + " is not in the list");
    }
    part.ranges.emplace_back(std::move(box));
  }
  part.point_map = iota_map(points.size());
  part.range_map = iota_map(polys.size());
  r.parts.push_back(std::move(part));
  r.certificate.point_map = "p -> (v_1 . p, ..., v_delta . p)";
  r.certificate.range_map = "polyhedron -> box of per-direction offsets";
  r.certificate.notes.push_back("delta=" + std::to_string(normals.size()));
  return r;
}

namespace {

enum class Side { down, up, left, right };

Side open_side(const Box& b) {
  if (b.dim() != 2) throw InvalidInput("3-sided rectangles must be 2-dimensional");
  const int open = !b.lo[0] + !b.hi[0] + !b.lo[1] + !b.hi[1];
  if (open == 0) throw InvalidInput("4-sided rectangle present");
  if (open > 1) throw Unsupported("rectangle with more than one infinite side");
  if (!b.lo[1]) return Side::down;
  if (!b.hi[1]) return Side::up;
  if (!b.lo[0]) return Side::left;
  return Side::right;
}

// Reflection carrying each orientation onto [a,b] x (-inf,h].
Point reflect_side(const Point& p, Side s) {
  switch (s) {
    case Side::down:
      return p;
    case Side::up:
      return Point{p[0], -p[1]};
    case Side::left:
      return Point{p[1], p[0]};
    case Side::right:
      return Point{p[1], -p[0]};
  }
  return p;
}

// a, b, h of the reflected rectangle.
std::array<Rational, 3> reflect_rect(const Box& b, Side s) {
  switch (s) {
    case Side::down:
      return {*b.lo[0], *b.hi[0], *b.hi[1]};
    case Side::up:
      return {*b.lo[0], *b.hi[0], Rational(-*b.lo[1])};
    case Side::left:
      return {*b.lo[1], *b.hi[1], *b.hi[0]};
    case Side::right:
      return {*b.lo[1], *b.hi[1], Rational(-*b.lo[0])};
  }
  return {};
}

const char* side_name(Side s) {
  static const char* names[] = {"open-below", "open-above", "open-left", "open-right"};
  return names[static_cast<int>(s)];
}

}  // namespace

ReductionResult threesided_to_orthants(const std::vector<Point>& points, const std::vector<Box>& rects) {
  for (const Point& p : points) {
    if (p.dim() != 2) throw InvalidInput("3-sided reduction expects 2D points");
  }
  ReductionResult r = start("threesided-to-orthants", points, rects);
  std::map<Side, std::vector<Index>> by_side;
  for (Index j = 0; j < rects.size(); ++j) by_side[open_side(rects[j])].push_back(j);
  for (const auto& [side, members] : by_side) {
    ReductionPart part;
    part.label = side_name(side);
    for (const Point& p : points) {
      const Point q = reflect_side(p, side);
      part.points.push_back(Point{Rational(-q[0]), q[0], q[1]});
    }
    part.point_map = iota_map(points.size());
    for (Index j : members) {
      const auto [a, b, h] = reflect_rect(rects[j], side);
      part.ranges.emplace_back(make_box({std::nullopt, std::nullopt, std::nullopt}, {Rational(-a), b, h}));
      part.range_map.push_back(j);
    }
    if (side != Side::down) r.certificate.notes.push_back(std::string("reflected ") + side_name(side) + " rectangles");
    r.parts.push_back(std::move(part));
  }
  r.certificate.point_map = "p -> (-p_x, p_x, p_y) after reflection";
  r.certificate.range_map = "[a,b] x (-inf,h] -> (-inf,-a] x (-inf,b] x (-inf,h]";
  return r;
}

ReductionResult orthants_to_halfspaces(const std::vector<Point>& points, const std::vector<Box>& orthants) {
  std::size_t d = 0;
  if (!orthants.empty()) d = orthants.front().dim();
  else if (!points.empty()) d = points.front().dim();
  for (const Point& p : points) {
    if (p.dim() != d) throw InvalidInput("point dimension mismatch");
  }
  ReductionResult r = start("orthants-to-halfspaces", points, orthants);

  // Orientation key: for each axis, whether the finite side is the lower one.
  std::map<std::vector<bool>, std::vector<Index>> groups;
  for (Index j = 0; j < orthants.size(); ++j) {
    const Box& b = orthants[j];
    if (b.dim() != d) throw InvalidInput("orthant dimension mismatch");
    std::vector<bool> key(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (b.lo[i] && b.hi[i]) throw InvalidInput("orthant has two finite sides on axis " + std::to_string(i));
      key[i] = b.lo[i].has_value();
    }
    groups[key].push_back(j);
  }

  for (const auto& [key, members] : groups) {
    ReductionPart part;
    std::string label;
    for (bool flipped : key) label += flipped ? '-' : '+';
    part.label = label;
    if (std::find(key.begin(), key.end(), true) != key.end()) {
      r.certificate.notes.push_back("reflected orientation " + label);
    }

    auto coord = [&](const Point& p, std::size_t i) { return key[i] ? Rational(-p[i]) : p[i]; };
    auto bound = [&](const Box& b, std::size_t i) -> Bound {
      if (key[i]) return Rational(-*b.lo[i]);
      return b.hi[i];
    };

    // Rank space per axis over point coordinates and finite bounds.
    std::vector<std::vector<Rational>> values(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (const Point& p : points) values[i].push_back(coord(p, i));
      for (Index j : members) {
        if (auto q = bound(orthants[j], i)) values[i].push_back(*q);
      }
      std::sort(values[i].begin(), values[i].end());
      values[i].erase(std::unique(values[i].begin(), values[i].end()), values[i].end());
    }
    auto rank = [&](std::size_t i, const Rational& v) {
      return static_cast<unsigned long>(std::lower_bound(values[i].begin(), values[i].end(), v) - values[i].begin());
    };

    for (const Point& p : points) {
      Point q;
      for (std::size_t i = 0; i < d; ++i) q.coords.emplace_back(pow4(rank(i, coord(p, i))));
      part.points.push_back(std::move(q));
    }
    part.point_map = iota_map(points.size());
    for (Index j : members) {
      std::vector<Rational> normal;
      for (std::size_t i = 0; i < d; ++i) {
        const Bound q = bound(orthants[j], i);
        normal.push_back(q ? Rational(1) / Rational(pow4(rank(i, *q))) : Rational(0));
      }
      part.ranges.emplace_back(general_halfspace(std::move(normal), 3, true));
      part.range_map.push_back(j);
    }
    r.parts.push_back(std::move(part));
  }
  r.certificate.point_map = "p -> (4^rank(p_1), ..., 4^rank(p_d)) after reflection";
  r.certificate.range_map = "orthant (-inf,q] -> sum_i x_i / 4^rank(q_i) <= 3";
  return r;
}

ReductionResult balls_to_halfspaces(const std::vector<Point>& points, const std::vector<Ball>& balls) {
  ReductionResult r = start("balls-to-halfspaces", points, balls);
  ReductionPart part;
  part.label = "lifted";
  for (const Point& p : points) part.points.push_back(lift(p));
  for (const Ball& b : balls) part.ranges.emplace_back(lift_ball(b));
  part.point_map = iota_map(points.size());
  part.range_map = iota_map(balls.size());
  r.parts.push_back(std::move(part));
  r.certificate.point_map = "p -> (p, |p|^2)";
  r.certificate.range_map = "ball(c, r) -> x_{d+1} <= 2 c . x + r^2 - |c|^2";
  return r;
}

Rational pointline_epsilon(const std::vector<Point>& points, const std::vector<Line>& lines) {
  std::optional<Rational> best;
  for (const Point& p : points) {
    if (p.dim() != 2) throw InvalidInput("point-line reduction expects 2D points");
    for (const Line& l : lines) {
      const Rational res = p[1] - l.slope * p[0] - l.intercept;
      if (res == 0) continue;
      const Rational sq = res * res;
      if (!best || sq < *best) best = sq;
    }
  }
  return best ? Rational(*best / 2) : Rational(1);
}

ReductionResult pointline_to_5d(const std::vector<Point>& points, const std::vector<Line>& lines) {
  ReductionResult r = start("pointline-to-5d", points, lines);
  const Rational eps = pointline_epsilon(points, lines);
  ReductionPart part;
  part.label = "veronese";
  for (const Point& p : points) {
    part.points.push_back(Point{Rational(p[0] * p[0]), Rational(p[1] * p[1]), Rational(p[0] * p[1]), p[0], p[1]});
  }
  for (const Line& l : lines) {
    const Rational& a = l.slope;
    const Rational& b = l.intercept;
    std::vector<Rational> normal{Rational(a * a), Rational(1), Rational(-2 * a), Rational(2 * a * b), Rational(-2 * b)};
    part.ranges.emplace_back(general_halfspace(std::move(normal), Rational(eps - b * b), true));
  }
  part.point_map = iota_map(points.size());
  part.range_map = iota_map(lines.size());
  r.parts.push_back(std::move(part));
  r.certificate.point_map = "p -> (p_x^2, p_y^2, p_x p_y, p_x, p_y)";
  r.certificate.range_map = "y = a x + b -> a^2 x1 + x2 - 2a x3 + 2ab x4 - 2b x5 <= eps - b^2";
  r.certificate.notes.push_back("eps=" + to_string(eps));
  return r;
}

ReductionResult wedge_duality(const std::vector<Point>& points, const std::vector<Wedge>& wedges) {
  for (const Wedge& w : wedges) {
    if (w.dim != 3) throw InvalidInput("wedge duality expects 3D wedges");
  }
  for (const Point& p : points) {
    if (p.dim() != 3) throw InvalidInput("wedge duality expects 3D points");
  }
  ReductionResult r = start("wedge-duality", points, wedges);
  ReductionPart part;
  part.label = "dual";
  part.swapped = true;
  for (const Wedge& w : wedges) part.points.push_back(Point{w.a, Rational(-w.b), Rational(-w.c)});
  for (const Point& p : points) part.ranges.emplace_back(Wedge{3, p[0], Rational(-p[1]), Rational(-p[2])});
  part.point_map = iota_map(wedges.size());
  part.range_map = iota_map(points.size());
  r.parts.push_back(std::move(part));
  r.certificate.point_map = "wedge (a,b,c) -> point (a,-b,-c)";
  r.certificate.range_map = "point (x,y,z) -> wedge {beta <= x alpha - y, gamma <= -z}";
  r.certificate.notes.push_back("points and ranges swap roles");
  return r;
}

ReductionResult wedge_lift(const std::vector<Point>& points, const std::vector<Wedge>& wedges) {
  for (const Wedge& w : wedges) {
    if (w.dim != 2) throw InvalidInput("wedge lift expects 2D wedges");
  }
  ReductionResult r = start("wedge-lift", points, wedges);
  ReductionPart part;
  part.label = "lifted";
  for (const Point& p : points) {
    if (p.dim() != 2) throw InvalidInput("wedge lift expects 2D points");
    part.points.push_back(Point{p[0], p[1], p[0]});
  }
  for (const Wedge& w : wedges) part.ranges.emplace_back(Wedge{3, w.a, w.b, w.c});
  part.point_map = iota_map(points.size());
  part.range_map = iota_map(wedges.size());
  r.parts.push_back(std::move(part));
  r.certificate.point_map = "p -> (p_x, p_y, p_x)";
  r.certificate.range_map = "{y <= ax+b, x <= c} -> {y <= ax+b, z <= c}";
  return r;
}

std::vector<OriginPiece> origin_pieces(const Triangle& t, const Point& origin) {
  if (!contains(t, origin)) throw InvalidInput("triangle does not contain the origin");
  std::array<Point, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = Point{Rational(t.v[i][0] - origin[0]), Rational(t.v[i][1] - origin[1])};
  const Rational area = orient(v[0], v[1], v[2]);
  if (area == 0) throw Unsupported("degenerate triangle");
  if (area < 0) std::swap(v[1], v[2]);
  std::vector<OriginPiece> out;
  for (int i = 0; i < 3; ++i) {
    const Point& u = v[i];
    const Point& w = v[(i + 1) % 3];
    Rational D = cross(u, w);
    if (D > 0) out.push_back(OriginPiece{u, w, std::move(D)});
  }
  return out;
}

Point to_curtain_space(const Point& rel, SignCell cell) {
  if (rel[0] == 0) throw InvalidInput("curtain transform is undefined at x = 0");
  const Rational x = cell == SignCell::right ? rel[0] : Rational(-rel[0]);
  if (x < 0) throw InvalidInput("point lies in the other sign cell");
  return Point{Rational(rel[1] / x), Rational(-1 / x)};
}

std::optional<Curtain> piece_curtain(const OriginPiece& piece, SignCell cell) {
  Point u = piece.u, w = piece.w;
  if (cell == SignCell::left) {
    // Reflecting x -> -x reverses orientation; swapping restores it.
    u = Point{Rational(-piece.w[0]), piece.w[1]};
    w = Point{Rational(-piece.u[0]), piece.u[1]};
  }
  const Rational& D = piece.D;
  Bound lo, hi;
  auto raise_lo = [&lo](const Rational& v) {
    if (!lo || v > *lo) lo = v;
  };
  auto lower_hi = [&hi](const Rational& v) {
    if (!hi || v < *hi) hi = v;
  };
  // cross(u, p) >= 0 divided by x > 0:  u_x X >= u_y.
  if (u[0] > 0) raise_lo(u[1] / u[0]);
  else if (u[0] < 0) lower_hi(u[1] / u[0]);
  else if (u[1] > 0) return std::nullopt;
  // cross(p, w) >= 0 divided by x > 0:  w_x X <= w_y.
  if (w[0] > 0) lower_hi(w[1] / w[0]);
  else if (w[0] < 0) raise_lo(w[1] / w[0]);
  else if (w[1] < 0) return std::nullopt;
  if (lo && hi && *lo > *hi) return std::nullopt;
  Curtain c;
  c.a = (w[0] - u[0]) / D;
  c.b = (u[1] - w[1]) / D;
  c.lo = lo;
  c.hi = hi;
  return c;
}

ReductionResult origin_triangle_to_curtain(const std::vector<Point>& points, const std::vector<Triangle>& triangles,
                                           const Point& origin) {
  if (origin.dim() != 2) throw InvalidInput("origin must be a 2D point");
  ReductionResult r = start("origin-triangle-to-curtain", points, triangles);
  std::vector<std::vector<OriginPiece>> pieces;
  for (const Triangle& t : triangles) pieces.push_back(origin_pieces(t, origin));

  const SignCell cells[] = {SignCell::right, SignCell::left};
  for (SignCell cell : cells) {
    ReductionPart part;
    part.label = cell == SignCell::right ? "x>0" : "x<0";
    for (Index i = 0; i < points.size(); ++i) {
      const Point& p = points[i];
      if (p.dim() != 2) throw InvalidInput("origin-triangle reduction expects 2D points");
      const Rational x = p[0] - origin[0];
      if ((cell == SignCell::right && x > 0) || (cell == SignCell::left && x < 0)) {
        part.points.push_back(to_curtain_space(Point{x, Rational(p[1] - origin[1])}, cell));
        part.point_map.push_back(i);
      }
    }
    for (Index j = 0; j < triangles.size(); ++j) {
      for (const OriginPiece& piece : pieces[j]) {
        if (auto c = piece_curtain(piece, cell)) {
          part.ranges.emplace_back(std::move(*c));
          part.range_map.push_back(j);
        }
      }
    }
    r.parts.push_back(std::move(part));
  }
  std::size_t on_axis = 0;
  for (Index i = 0; i < points.size(); ++i) {
    if (points[i][0] != origin[0]) continue;
    ++on_axis;
    for (Index j = 0; j < triangles.size(); ++j) {
      if (contains(triangles[j], points[i])) r.direct_edges.emplace_back(i, j);
    }
  }
  r.certificate.point_map = "p - o = (x, y) -> (y/|x|, -1/|x|), split by the sign of x";
  r.certificate.range_map = "origin piece (o, u, w) -> curtain in the swapped axes (X, Y)";
  r.certificate.notes.push_back("axis swap: X = y/x, Y = -1/x");
  r.certificate.notes.push_back("left cell reflected by x -> -x");
  r.certificate.notes.push_back("points with x = 0 decided directly: " + std::to_string(on_axis));
  return r;
}

const std::vector<std::string>& reduction_names() {
  static const std::vector<std::string> names{"polyhedra-to-boxes",  "threesided-to-orthants", "orthants-to-halfspaces",
                                              "balls-to-halfspaces", "pointline-to-5d",        "wedge-duality",
                                              "wedge-lift",          "origin-triangle-to-curtain"};
  return names;
}

}  // namespace incidence
