#include "doctest.h"
#include "incidence/extremal.hpp"
#include "incidence/generators.hpp"
#include "incidence/reductions.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace incidence;

namespace {

// Target edges from the independent oracle, mapped back to source indices.
oracle::EdgeSet oracle_projection(const ReductionResult& r) {
  oracle::EdgeSet out(r.direct_edges.begin(), r.direct_edges.end());
  for (const ReductionPart& part : r.parts) {
    for (const auto& [p, h] : oracle::edges(part.points, part.ranges)) {
      const Index a = part.point_map[p], b = part.range_map[h];
      if (part.swapped) {
        out.emplace_back(b, a);
      } else {
        out.emplace_back(a, b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_reduction(ReductionResult r) {
  const oracle::EdgeSet source = oracle::edges(r.source_points, r.source_ranges);
  CHECK(oracle_projection(r) == source);
  CHECK(certify(r));
  CHECK(r.certificate.verified);
  CHECK(r.certificate.source_edges == source.size());
}

Rational rnd(Rng& rng, std::int64_t lo, std::int64_t hi) { return Rational(rng.uniform(lo, hi)); }

}  // namespace

TEST_CASE("polyhedra to boxes: examples") {
  // Axis normals map points and boxes to themselves.
  const std::vector<std::vector<Rational>> axes{{1, 0}, {0, 1}};
  Polyhedron sq{2, {Facet{{1, 0}, 3}, Facet{{-1, 0}, -1}, Facet{{0, 1}, 2}}};
  ReductionResult id = polyhedra_to_boxes(axes, {Point{2, 1}, Point{0, 0}}, {sq});
  REQUIRE(id.parts.size() == 1);
  CHECK(id.parts[0].points[0] == Point{2, 1});
  const Box& b = std::get<Box>(id.parts[0].ranges[0]);
  CHECK(b.lo[0] == Rational(1));
  CHECK(b.hi[0] == Rational(3));
  CHECK_FALSE(b.lo[1].has_value());
  CHECK(b.hi[1] == Rational(2));
  check_reduction(id);

  // Strips with normals (1,0) and (1,1).
  Polyhedron strip{2, {Facet{{1, 1}, 4}, Facet{{-2, -2}, -2}}};
  ReductionResult s = polyhedra_to_boxes({{1, 0}, {1, 1}}, {Point{1, 2}}, {strip});
  CHECK(s.parts[0].points[0] == Point{1, 3});
  check_reduction(s);

  Polyhedron bad{2, {Facet{{0, 1}, 4}}};
  CHECK_THROWS_AS(polyhedra_to_boxes({{1, 0}, {1, 1}}, {Point{1, 2}}, {bad}), InvalidInput);
}

TEST_CASE("polyhedra to boxes: random instances") {
  const std::vector<std::vector<Rational>> normals{{1, 0}, {0, 1}, {1, 1}, {1, -2}};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    std::vector<Point> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(Point{rnd(rng, -10, 10), rnd(rng, -10, 10)});
    std::vector<Polyhedron> polys;
    for (int j = 0; j < 8; ++j) {
      Polyhedron poly{2, {}};
      for (const auto& v : normals) {
        const Rational scale(rng.uniform(1, 3));
        if (rng.chance(0.7)) poly.facets.push_back(Facet{{v[0] * scale, v[1] * scale}, rnd(rng, -5, 15)});
        if (rng.chance(0.7)) poly.facets.push_back(Facet{{-v[0] * scale, -v[1] * scale}, rnd(rng, -5, 15)});
      }
      polys.push_back(poly);
    }
    check_reduction(polyhedra_to_boxes(normals, pts, polys));
  }
}

TEST_CASE("3-sided rectangles to orthants") {
  const Box rect = make_box({Rational(1), std::nullopt}, {Rational(3), Rational(6)});
  ReductionResult r = threesided_to_orthants({Point{2, 5}, Point{4, 5}}, {rect});
  REQUIRE(r.parts.size() == 1);
  CHECK(r.parts[0].points[0] == Point{-2, 2, 5});
  const Box& o = std::get<Box>(r.parts[0].ranges[0]);
  CHECK(o.hi[0] == Rational(-1));
  CHECK(o.hi[1] == Rational(3));
  CHECK(o.hi[2] == Rational(6));
  CHECK_FALSE(o.lo[0].has_value());
  CHECK(oracle_projection(r) == oracle::EdgeSet{{0, 0}});
  check_reduction(r);

  const Box four = make_box({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
  CHECK_THROWS(threesided_to_orthants({Point{0, 0}}, {four}));

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    std::vector<Point> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(Point{rnd(rng, 0, 12), rnd(rng, 0, 12)});
    std::vector<Box> rects;
    for (int j = 0; j < 12; ++j) {
      Rational a = rnd(rng, 0, 12), b = rnd(rng, 0, 12), c = rnd(rng, 0, 12), e = rnd(rng, 0, 12);
      if (a > b) std::swap(a, b);
      if (c > e) std::swap(c, e);
      std::vector<Bound> lo{a, c}, hi{b, e};
      switch (rng.uniform(0, 3)) {
        case 0: lo[1].reset(); break;
        case 1: hi[1].reset(); break;
        case 2: lo[0].reset(); break;
        default: hi[0].reset(); break;
      }
      rects.push_back(make_box(lo, hi));
    }
    check_reduction(threesided_to_orthants(pts, rects));
  }
}

TEST_CASE("orthants to halfspaces") {
  const auto orthant = [](int x, int y, int z) {
    return make_box({std::nullopt, std::nullopt, std::nullopt}, {Rational(x), Rational(y), Rational(z)});
  };
  const std::vector<Point> pts{Point{1, 2, 3}, Point{3, 2, 3}, Point{2, 2, 3}};
  ReductionResult r = orthants_to_halfspaces(pts, {orthant(2, 2, 3)});
  const oracle::EdgeSet e = oracle_projection(r);
  // (1,2,3) is inside, (3,2,3) has one dominating term, (2,2,3) sits on the boundary.
  CHECK(e == oracle::EdgeSet{{0, 0}, {2, 0}});
  check_reduction(r);

  // The equality case evaluates to exactly 3.
  for (const ReductionPart& part : r.parts) {
    for (std::size_t i = 0; i < part.points.size(); ++i) {
      if (part.point_map[i] != 2) continue;
      const Halfspace& h = std::get<Halfspace>(part.ranges[0]);
      CHECK(dot(h.normal, part.points[i].coords) == h.rhs);
    }
  }

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    std::vector<Point> p;
    for (int i = 0; i < 20; ++i) p.push_back(Point{rnd(rng, 0, 6), rnd(rng, 0, 6), rnd(rng, 0, 6)});
    std::vector<Box> os;
    for (int j = 0; j < 10; ++j) {
      std::vector<Bound> lo(3), hi(3);
      for (int a = 0; a < 3; ++a) {
        const int kind = static_cast<int>(rng.uniform(0, 4));
        if (kind == 0) lo[a] = rnd(rng, 0, 6);
        if (kind >= 2) hi[a] = rnd(rng, 0, 6);
      }
      os.push_back(make_box(lo, hi));
    }
    check_reduction(orthants_to_halfspaces(p, os));
  }
}

TEST_CASE("balls to halfspaces") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    const unsigned d = 2 + seed % 2;
    std::vector<Point> pts;
    for (int i = 0; i < 20; ++i) {
      std::vector<Rational> c;
      for (unsigned a = 0; a < d; ++a) c.push_back(rnd(rng, -6, 6));
      pts.push_back(Point(c));
    }
    std::vector<Ball> balls;
    for (int j = 0; j < 8; ++j) {
      std::vector<Rational> c;
      for (unsigned a = 0; a < d; ++a) c.push_back(rnd(rng, -6, 6));
      balls.push_back(make_ball(Point(c), rnd(rng, 0, 40)));
    }
    check_reduction(balls_to_halfspaces(pts, balls));
  }
}

TEST_CASE("points and lines to 5D") {
  const Line diag{1, 0};
  ReductionResult r = pointline_to_5d({Point{1, 1}, Point{0, 1}}, {diag});
  CHECK(r.parts[0].points[0] == Point{1, 1, 1, 1, 1});
  CHECK(pointline_epsilon({Point{1, 1}, Point{0, 1}}, {diag}) == Rational(1, 2));
  CHECK(oracle_projection(r) == oracle::EdgeSet{{0, 0}});
  check_reduction(r);

  // Every pair incident: any positive eps works.
  CHECK(pointline_epsilon({Point{1, 1}}, {diag}) > 0);

  const Instance elekes = elekes_instance(2);
  std::vector<Line> lines;
  for (const Range& l : elekes.ranges) lines.push_back(std::get<Line>(l));
  ReductionResult e = pointline_to_5d(elekes.points, lines);
  const oracle::EdgeSet target = oracle_projection(e);
  CHECK(target.size() == 16);
  CHECK_FALSE(oracle::has_kkk(elekes.points.size(), lines.size(), target, 2));
  check_reduction(e);
}

TEST_CASE("wedge maps") {
  // Variant I.
  ReductionResult d = wedge_duality({Point{1, 2, 3}}, {Wedge{3, 2, 1, 4}});
  REQUIRE(d.parts.size() == 1);
  CHECK(d.parts[0].swapped);
  CHECK(d.parts[0].points[0] == Point{2, -1, -4});
  const Wedge& w = std::get<Wedge>(d.parts[0].ranges[0]);
  CHECK(w.a == 1);
  CHECK(w.b == -2);
  CHECK(w.c == -3);
  CHECK(oracle_projection(d) == oracle::EdgeSet{{0, 0}});
  check_reduction(d);

  // Applying the duality twice gives back the incidence pattern.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    std::vector<Point> pts;
    std::vector<Wedge> ws;
    for (int i = 0; i < 15; ++i) pts.push_back(Point{rnd(rng, -5, 5), rnd(rng, -5, 5), rnd(rng, -5, 5)});
    for (int j = 0; j < 10; ++j) ws.push_back(Wedge{3, rnd(rng, -3, 3), rnd(rng, -5, 5), rnd(rng, -5, 5)});
    ReductionResult once = wedge_duality(pts, ws);
    check_reduction(once);
    std::vector<Wedge> back_ranges;
    for (const Range& rr : once.parts[0].ranges) back_ranges.push_back(std::get<Wedge>(rr));
    ReductionResult twice = wedge_duality(once.parts[0].points, back_ranges);
    const oracle::EdgeSet e1 = oracle::edges(once.parts[0].points, once.parts[0].ranges);
    oracle::EdgeSet e2;
    for (const auto& [a, b] : oracle::edges(twice.parts[0].points, twice.parts[0].ranges)) e2.emplace_back(b, a);
    std::sort(e2.begin(), e2.end());
    CHECK(e1 == e2);
    CHECK(oracle::edges(twice.parts[0].points, twice.parts[0].ranges) == oracle::edges(pts, ws));
  }

  // Variant II.
  ReductionResult lift = wedge_lift({Point{1, 2}}, {Wedge{2, 1, 2, 1}});
  CHECK(lift.parts[0].points[0] == Point{1, 2, 1});
  CHECK(oracle_projection(lift) == oracle::EdgeSet{{0, 0}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed + 100);
    std::vector<Point> pts;
    std::vector<Wedge> ws;
    for (int i = 0; i < 15; ++i) pts.push_back(Point{rnd(rng, -5, 5), rnd(rng, -5, 5)});
    for (int j = 0; j < 10; ++j) ws.push_back(Wedge{2, rnd(rng, -3, 3), rnd(rng, -5, 5), rnd(rng, -5, 5)});
    check_reduction(wedge_lift(pts, ws));
  }
}

TEST_CASE("origin triangles to curtains: example") {
  const Triangle t{{Point{0, 0}, Point{2, 0}, Point{2, 2}}};
  const auto pieces = origin_pieces(t, Point{0, 0});
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].D == 4);

  const Point p = to_curtain_space(Point{1, Rational(1, 2)}, SignCell::right);
  CHECK(p == Point{Rational(1, 2), -1});
  const auto c = piece_curtain(pieces[0], SignCell::right);
  REQUIRE(c.has_value());
  CHECK(c->a == 0);
  CHECK(c->b == Rational(-1, 2));
  CHECK(c->lo == Rational(0));
  CHECK(c->hi == Rational(1));
  CHECK(contains(*c, p));
  CHECK_FALSE(piece_curtain(pieces[0], SignCell::left).has_value());

  // A point on the edge y = x lands on the curtain's boundary X = 1.
  const Point edge = to_curtain_space(Point{1, 1}, SignCell::right);
  CHECK(edge[0] == 1);
  CHECK(contains(*c, edge));
  CHECK_FALSE(contains(*c, to_curtain_space(Point{1, Rational(11, 10)}, SignCell::right)));

  CHECK_THROWS_AS(origin_pieces(t, Point{5, 5}), InvalidInput);
}

TEST_CASE("origin triangles to curtains: random instances per sign cell") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    std::vector<Point> pts;
    for (int i = 0; i < 30; ++i) {
      // Mix both sign cells and a few points on the vertical axis.
      pts.push_back(Point{rnd(rng, -8, 8), rnd(rng, -8, 8)});
    }
    std::vector<Triangle> tris;
    while (tris.size() < 6) {
      Triangle t{{Point{rnd(rng, -10, 10), rnd(rng, -10, 10)}, Point{rnd(rng, -10, 10), rnd(rng, -10, 10)},
                  Point{rnd(rng, -10, 10), rnd(rng, -10, 10)}}};
      if (orient(t.v[0], t.v[1], t.v[2]) == 0) continue;
      if (!oracle::in_triangle(t, {0, 0})) continue;
      tris.push_back(t);
    }
    ReductionResult r = origin_triangle_to_curtain(pts, tris);
    check_reduction(r);
  }
}

TEST_CASE("reduction names") {
  CHECK(reduction_names().size() == 8);
}
