// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
// Usage: acceptance [criterion numbers...]   (default: all ten)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <array>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "incidence/box_cover.hpp"
#include "incidence/curtain_audit.hpp"
#include "incidence/curtain_structure.hpp"
#include "incidence/dyadic.hpp"
#include "incidence/extremal.hpp"
#include "incidence/fat_structure.hpp"
#include "incidence/generators.hpp"
#include "incidence/interval_audit.hpp"
#include "incidence/levels.hpp"
#include "incidence/quadtree.hpp"
#include "incidence/reductions.hpp"
#include "incidence/slab_audit.hpp"
#include "oracles.hpp"

using namespace incidence;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

template <class R>
std::vector<R> ranges_as(const Instance& inst) {
  std::vector<R> out;
  for (const Range& r : inst.ranges) out.push_back(std::get<R>(r));
  return out;
}

std::string tag(const char* family, std::uint64_t seed) { return std::string(family) + " seed " + std::to_string(seed); }

Rational rnd(Rng& rng, std::int64_t lo, std::int64_t hi) { return Rational(rng.uniform(lo, hi)); }

Rational rnd_frac(Rng& rng, std::int64_t span) {
  return ratio(rng.uniform(-span, span), rng.uniform(1, 12));
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence.

void criterion1(Outcome& o) {
  constexpr std::uint64_t kRuns = 500;
  const auto size = [](Rng& rng) { return static_cast<std::size_t>(rng.uniform(10, 300)); };
  std::uint64_t instances = 0, oracle_checked = 0;

  // Boxes, d = 1, 2, 3.
  for (unsigned d = 1; d <= 3; ++d) {
    for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
      Rng rng(seed * 7 + d);
      const Instance inst = random_boxes(size(rng), size(rng), d, seed * 10 + d, 48);
      const auto boxes = ranges_as<Box>(inst);
      const IncidenceGraph g = incidences_bruteforce(inst.points, boxes);
      ++instances;
      if (seed <= 25) {
        o.expect(oracle::edges(inst.points, boxes) == g.edges, tag("bruteforce vs oracle boxes", seed));
        ++oracle_checked;
      }
      o.expect(build_box_cover(inst.points, boxes).cover.flatten() == g.edges, tag("box cover", seed));
      if (d == 2) o.expect(rect_audit(inst.points, boxes).total == g.incidences(), tag("rect audit", seed));
      if (d >= 2) o.expect(box_audit(inst.points, boxes).total == g.incidences(), tag("box audit", seed));
    }
  }

  // Halfspaces, d = 2, 3: the brute force itself against the independent oracle.
  for (unsigned d = 2; d <= 3; ++d) {
    for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
      Rng rng(seed * 11 + d);
      const Instance inst = random_halfspaces(size(rng), size(rng), d, seed * 10 + d, 48);
      const IncidenceGraph g = incidences_bruteforce(inst.points, inst.ranges);
      ++instances;
      if (seed <= 100) {
        o.expect(oracle::edges(inst.points, inst.ranges) == g.edges, tag("bruteforce vs oracle halfspaces", seed));
        ++oracle_checked;
      }
      // Lower halfspaces through the curtain-free duality: above/below flip.
      std::uint64_t dual = 0;
      for (const Range& r : inst.ranges) {
        const Halfspace& h = std::get<Halfspace>(r);
        if (h.kind == HalfspaceKind::general) continue;
        for (const Point& p : inst.points) {
          const bool in = h.kind == HalfspaceKind::upper ? above(p, h.plane) : below(p, h.plane);
          const bool in_dual =
              h.kind == HalfspaceKind::upper ? above(dualize(h.plane), dualize(p)) : below(dualize(h.plane), dualize(p));
          dual += in != in_dual;
        }
      }
      o.expect(dual == 0, tag("halfspace dual count", seed));
    }
  }

  // Curtains: the reporting structure and the slab audit.
  for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
    Rng rng(seed * 13);
    const Instance inst = random_curtains(size(rng), size(rng), seed, 48);
    const auto curtains = ranges_as<Curtain>(inst);
    const IncidenceGraph g = incidences_bruteforce(inst.points, curtains);
    ++instances;
    if (seed <= 25) {
      o.expect(oracle::edges(inst.points, curtains) == g.edges, tag("bruteforce vs oracle curtains", seed));
      ++oracle_checked;
    }
    CurtainAuditOptions opts;
    opts.check_oracle = false;
    o.expect(curtain_audit(inst.points, curtains, opts).total == g.incidences(), tag("curtain audit", seed));
    const CurtainStructure cs(inst.points);
    const auto by_range = g.points_of_ranges();
    for (std::size_t j = 0; j < curtains.size(); ++j) {
      if (cs.query(curtains[j]) != by_range[j]) {
        o.fail(tag("curtain query", seed));
        break;
      }
    }
  }

  // Fat triangles: the reporting structure.
  for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
    Rng rng(seed * 17);
    const Instance inst = random_fat(size(rng), size(rng), seed, std::numbers::pi / 6);
    const auto tris = ranges_as<Triangle>(inst);
    const IncidenceGraph g = incidences_bruteforce(inst.points, tris);
    ++instances;
    if (seed <= 25) {
      o.expect(oracle::edges(inst.points, tris) == g.edges, tag("bruteforce vs oracle triangles", seed));
      ++oracle_checked;
    }
    const FatReportStructure fs(inst.points);
    const auto by_range = g.points_of_ranges();
    for (std::size_t j = 0; j < tris.size(); ++j) {
      if (fs.query(tris[j]) != by_range[j]) {
        o.fail(tag("fat query", seed));
        break;
      }
    }
    o.expect(fs.integrity_events() == 0, tag("fat brute-force fallback", seed));
  }
  o.detail << instances << " instances, " << oracle_checked << " also against the exact-rational oracle";
}

// ---------------------------------------------------------------------------
// 2. Canonical dyadic decompositions, exhaustively.

void criterion2(Outcome& o) {
  std::uint64_t checked = 0, minimal_checked = 0;
  std::size_t worst = 0;
  for (std::uint64_t n = 2; n <= 1024; ++n) {
    const std::size_t bound = canonical_size_bound(n);
    const std::size_t expect_bound = 2 * static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
    o.expect(bound == expect_bound, "size bound formula at n=" + std::to_string(n));
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a; b < n; ++b) {
        std::uint64_t next = a;
        std::size_t count = 0;
        bool ok = true;
        for_each_canonical(a, b, n, [&](const DyadicRange& r) {
          ok = ok && r.first() == next && r.last() <= b && oracle::is_dyadic(r.first(), r.last(), n);
          next = r.last() + 1;
          ++count;
        });
        ok = ok && next == b + 1 && count <= bound;
        worst = std::max(worst, count);
        ++checked;
        if (!ok) o.fail("decomposition of [" + std::to_string(a) + "," + std::to_string(b) + "] n=" + std::to_string(n));
        if (n <= 64) {
          const oracle::DyadicOptimum best = oracle::min_dyadic_cover(a, b, n);
          const auto got = canonical_decomposition(a, b, n);
          std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
          for (const DyadicRange& r : got) spans.emplace_back(r.first(), r.last());
          const bool minimal = best.ways == 1 && best.size == got.size() && spans == best.example;
          if (!minimal) o.fail("not the unique minimum at [" + std::to_string(a) + "," + std::to_string(b) + "] n=" +
                               std::to_string(n));
          ++minimal_checked;
        }
      }
    }
  }
  o.detail << checked << " decompositions, " << minimal_checked << " against exhaustive search, largest " << worst;
}

// ---------------------------------------------------------------------------
// 3. Interval bound.

void criterion3(Outcome& o) {
  std::uint64_t runs = 0, worst_i = 0, worst_bound = 0;
  double worst_ratio = 0;
  for (unsigned k = 2; k <= 4; ++k) {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      Rng rng(seed * 31 + k);
      const std::size_t n = static_cast<std::size_t>(rng.uniform(k, 200));
      const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 600));
      const Instance inst = kkk_free_intervals(n, m, k, seed * 100 + k);
      const auto ivs = ranges_as<Box>(inst);
      const IncidenceGraph g = incidences_bruteforce(inst.points, ivs);
      const std::uint64_t bound = std::uint64_t{k} * n + 3ull * k * ivs.size();
      o.expect(find_kkk(g, k).verdict == KkkVerdict::none, tag("instance not K_{k,k}-free", seed));
      o.expect(g.incidences() <= bound, tag("I > kn + 3km", seed));
      const IntervalAuditReport r = interval_audit(inst.points, ivs, k);
      o.expect(r.incidences == g.incidences() && r.bound == bound && r.within_bound() && r.blocks_ok(),
               tag("interval audit", seed));
      const double ratio = bound ? static_cast<double>(g.incidences()) / static_cast<double>(bound) : 0.0;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_i = g.incidences();
        worst_bound = bound;
      }
      ++runs;
    }
  }
  o.detail << runs << " instances, tightest I/(kn+3km) = " << worst_i << "/" << worst_bound;
}

// ---------------------------------------------------------------------------
// 4. Biclique bound soundness.

void criterion4(Outcome& o) {
  std::uint64_t none = 0, found = 0, unknown = 0, surfaced = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    Rng rng(seed * 37);
    const unsigned d = 1 + seed % 3;
    const unsigned k = 2 + seed % 2;
    const std::size_t n = static_cast<std::size_t>(rng.uniform(5, 60));
    const std::size_t m = static_cast<std::size_t>(rng.uniform(2, 40));
    const std::int64_t grid = rng.uniform(8, 64);
    const Instance inst = random_boxes(n, m, d, seed, grid);
    const auto boxes = ranges_as<Box>(inst);
    const IncidenceGraph g = incidences_bruteforce(inst.points, boxes);
    const KkkResult verdict = find_kkk(g, k);
    const CoverBound cb = cover_bound(build_box_cover(inst.points, boxes).cover, k);
    if (verdict.verdict == KkkVerdict::none) {
      ++none;
      o.expect(cb.certified && cb.bound >= g.incidences(), tag("certified bound below I", seed));
    } else if (verdict.verdict == KkkVerdict::found) {
      ++found;
      if (cb.certified) {
        o.fail(tag("K_{k,k} present but the cover certified a bound", seed));
        continue;
      }
      bool ok = cb.offending_pair.has_value() && cb.witness.verdict == KkkVerdict::found &&
                cb.witness.points.size() >= k && cb.witness.ranges.size() >= k;
      for (Index p : cb.witness.points) {
        for (Index r : cb.witness.ranges) ok = ok && contains(boxes[r], inst.points[p]);
      }
      o.expect(ok, tag("witness not embedded", seed));
      surfaced += ok;
    } else {
      ++unknown;
    }
  }
  o.expect(none > 0 && found > 0, "both verdicts must occur");
  o.detail << none << " K_{k,k}-free instances certified, " << surfaced << "/" << found
           << " instances with a K_{k,k} surfaced a pair, " << unknown << " unknown";
}

// ---------------------------------------------------------------------------
// 5. Elekes grid and its 5D image.

void criterion5(Outcome& o) {
  const PointLineInstance g = elekes_grid(8);
  const IncidenceGraph graph = incidences_bruteforce(g.points, g.lines);
  const oracle::EdgeSet oracle_edges = oracle::edges(g.points, g.lines);
  o.expect(g.points.size() == 1024, "n != 1024");
  o.expect(g.lines.size() == 512, "m != 512");
  o.expect(graph.incidences() == 4096, "I != 4096");
  o.expect(oracle_edges == graph.edges, "oracle disagrees");
  o.expect(find_kkk(graph, 2).verdict == KkkVerdict::none, "K_{2,2} found");

  ReductionResult r = lower_bound_5d(8);
  o.expect(certify(r), "5D certificate not verified");
  o.expect(r.parts.size() == 1, "expected one 5D part");
  if (r.parts.size() == 1) {
    const ReductionPart& part = r.parts[0];
    const IncidenceGraph target = incidences_bruteforce(part.points, part.ranges);
    std::vector<Edge> mapped;
    for (const Edge& e : target.edges) mapped.emplace_back(part.point_map[e.first], part.range_map[e.second]);
    std::sort(mapped.begin(), mapped.end());
    o.expect(mapped == graph.edges, "5D graph differs");
    o.expect(part.points.size() == 1024 && part.ranges.size() == 512, "5D sizes differ");
    o.expect(find_kkk(target, 2).verdict == KkkVerdict::none, "K_{2,2} in 5D");
    o.detail << "n=" << part.points.size() << " m=" << part.ranges.size() << " I=" << target.incidences()
             << " in 5D, eps=" << to_string(pointline_epsilon(g.points, g.lines));
  }
}

// ---------------------------------------------------------------------------
// 6. Reduction certificates.

oracle::EdgeSet projected_oracle(const ReductionResult& r) {
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

void criterion6(Outcome& o) {
  std::map<std::string, std::uint64_t> verified;
  const auto run = [&](const std::string& name, std::uint64_t seed, ReductionResult r) {
    const bool cert = certify(r);
    const bool iso = projected_oracle(r) == oracle::edges(r.source_points, r.source_ranges);
    o.expect(cert && iso, name + " seed " + std::to_string(seed));
    verified[name] += cert && iso;
  };

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed * 41);
    // Polyhedra over four fixed directions.
    {
      const std::vector<std::vector<Rational>> normals{{1, 0}, {0, 1}, {1, 1}, {2, -1}};
      std::vector<Point> pts;
      for (int i = 0; i < 30; ++i) pts.push_back(Point{rnd(rng, -10, 10), rnd(rng, -10, 10)});
      std::vector<Polyhedron> polys;
      for (int j = 0; j < 12; ++j) {
        Polyhedron poly{2, {}};
        for (const auto& v : normals) {
          const Rational s(rng.uniform(1, 3));
          if (rng.chance(0.7)) poly.facets.push_back(Facet{{v[0] * s, v[1] * s}, rnd(rng, -5, 20)});
          if (rng.chance(0.7)) poly.facets.push_back(Facet{{-v[0] * s, -v[1] * s}, rnd(rng, -5, 20)});
        }
        polys.push_back(poly);
      }
      run("polyhedra-to-boxes", seed, polyhedra_to_boxes(normals, pts, polys));
    }
    // 3-sided rectangles in all four orientations.
    {
      std::vector<Point> pts;
      for (int i = 0; i < 30; ++i) pts.push_back(Point{rnd(rng, 0, 15), rnd(rng, 0, 15)});
      std::vector<Box> rects;
      for (int j = 0; j < 15; ++j) {
        Rational a = rnd(rng, 0, 15), b = rnd(rng, 0, 15), c = rnd(rng, 0, 15), e = rnd(rng, 0, 15);
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
      run("threesided-to-orthants", seed, threesided_to_orthants(pts, rects));
    }
    // Orthants in every orientation; the first point sits on a corner, so its
    // weighted sum is exactly 3.
    {
      std::vector<Point> pts;
      for (int i = 0; i < 25; ++i) pts.push_back(Point{rnd(rng, 0, 8), rnd(rng, 0, 8), rnd(rng, 0, 8)});
      std::vector<Box> os;
      os.push_back(make_box({std::nullopt, std::nullopt, std::nullopt}, {pts[0][0], pts[0][1], pts[0][2]}));
      for (int j = 0; j < 12; ++j) {
        std::vector<Bound> lo(3), hi(3);
        for (int a = 0; a < 3; ++a) {
          const std::int64_t kind = rng.uniform(0, 4);
          if (kind == 0) lo[a] = rnd(rng, 0, 8);
          if (kind >= 2) hi[a] = rnd(rng, 0, 8);
        }
        os.push_back(make_box(lo, hi));
      }
      ReductionResult r = orthants_to_halfspaces(pts, os);
      bool equality = false;
      for (const ReductionPart& part : r.parts) {
        for (std::size_t i = 0; i < part.points.size(); ++i) {
          for (std::size_t j = 0; j < part.ranges.size(); ++j) {
            if (part.point_map[i] != 0 || part.range_map[j] != 0) continue;
            const Halfspace& h = std::get<Halfspace>(part.ranges[j]);
            equality = dot(h.normal, part.points[i].coords) == h.rhs && h.rhs == 3;
          }
        }
      }
      o.expect(equality, "orthant equality case seed " + std::to_string(seed));
      run("orthants-to-halfspaces", seed, std::move(r));
    }
    // Balls in 2D and 3D.
    {
      const unsigned d = 2 + seed % 2;
      std::vector<Point> pts;
      std::vector<Ball> balls;
      for (int i = 0; i < 30; ++i) {
        std::vector<Rational> c;
        for (unsigned a = 0; a < d; ++a) c.push_back(rnd_frac(rng, 20));
        pts.push_back(Point(c));
      }
      for (int j = 0; j < 12; ++j) {
        std::vector<Rational> c;
        for (unsigned a = 0; a < d; ++a) c.push_back(rnd_frac(rng, 20));
        balls.push_back(make_ball(Point(c), rnd(rng, 0, 40)));
      }
      // One point exactly on a sphere.
      balls.push_back(make_ball(Point{std::vector<Rational>(d, Rational(0))}, squared_distance(pts[0], Point{std::vector<Rational>(d, Rational(0))})));
      run("balls-to-halfspaces", seed, balls_to_halfspaces(pts, balls));
    }
    // Points and lines, with many incidences.
    {
      std::vector<Line> lines;
      for (int j = 0; j < 10; ++j) lines.push_back(Line{rnd(rng, -3, 3), rnd(rng, -5, 5)});
      std::vector<Point> pts;
      for (int i = 0; i < 30; ++i) {
        const Rational x = rnd(rng, -5, 5);
        if (rng.chance(0.5)) {
          const Line& l = lines[static_cast<std::size_t>(rng.uniform(0, 9))];
          pts.push_back(Point{x, Rational(l.slope * x + l.intercept)});
        } else {
          pts.push_back(Point{x, rnd(rng, -20, 20)});
        }
      }
      run("pointline-to-5d", seed, pointline_to_5d(pts, lines));
    }
    // Wedges: the 3D duality and the 2D lift.
    {
      std::vector<Point> p3, p2;
      std::vector<Wedge> w3, w2;
      for (int i = 0; i < 25; ++i) {
        p3.push_back(Point{rnd(rng, -6, 6), rnd(rng, -6, 6), rnd(rng, -6, 6)});
        p2.push_back(Point{rnd(rng, -6, 6), rnd(rng, -6, 6)});
      }
      for (int j = 0; j < 12; ++j) {
        w3.push_back(Wedge{3, rnd(rng, -3, 3), rnd(rng, -6, 6), rnd(rng, -6, 6)});
        w2.push_back(Wedge{2, rnd(rng, -3, 3), rnd(rng, -6, 6), rnd(rng, -6, 6)});
      }
      run("wedge-duality", seed, wedge_duality(p3, w3));
      run("wedge-lift", seed, wedge_lift(p2, w2));
    }
    // Triangles around the origin, points in both sign cells and on the axis.
    {
      std::vector<Point> pts;
      for (int i = 0; i < 30; ++i) pts.push_back(Point{rnd(rng, -8, 8), rnd(rng, -8, 8)});
      std::vector<Triangle> tris;
      while (tris.size() < 8) {
        Triangle t{{Point{rnd(rng, -10, 10), rnd(rng, -10, 10)}, Point{rnd(rng, -10, 10), rnd(rng, -10, 10)},
                    Point{rnd(rng, -10, 10), rnd(rng, -10, 10)}}};
        if (orient(t.v[0], t.v[1], t.v[2]) == 0 || !oracle::in_triangle(t, {0, 0})) continue;
        tris.push_back(t);
      }
      run("origin-triangle-to-curtain", seed, origin_triangle_to_curtain(pts, tris));
    }
  }
  for (const auto& [name, count] : verified) o.detail << name << " " << count << "/50  ";
}

// ---------------------------------------------------------------------------
// 7. Duality and lifting.

void criterion7(Outcome& o) {
  Rng rng(7);
  std::uint64_t dual_bad = 0, lift_bad = 0, above_count = 0, inside = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const unsigned d = 2 + static_cast<unsigned>(trial % 3);
    std::vector<Rational> pc, slopes;
    for (unsigned a = 0; a < d; ++a) pc.push_back(rnd_frac(rng, 6));
    for (unsigned a = 0; a + 1 < d; ++a) slopes.push_back(rnd_frac(rng, 6));
    const Point p(pc);
    Hyperplane h{slopes, rnd_frac(rng, 6)};
    // Put a share of the points exactly on the hyperplane.
    Point q = p;
    if (trial % 5 == 0) q[d - 1] = height(h, q);
    const bool up = above(q, h), down = below(q, h);
    dual_bad += up != above(dualize(h), dualize(q));
    dual_bad += down != below(dualize(h), dualize(q));
    above_count += up;

    const Ball b = make_ball(Point{[&] {
                               std::vector<Rational> c;
                               for (unsigned a = 0; a < d; ++a) c.push_back(rnd_frac(rng, 6));
                               return c;
                             }()},
                             ratio(rng.uniform(0, 60), rng.uniform(1, 6)));
    const Point& s = p;
    const bool in = contains(b, s);
    const bool lifted = contains(lift_ball(b), lift(s));
    lift_bad += in != lifted;
    lift_bad += in != oracle::in_ball(b, oracle::q(s));
    inside += in;
  }
  o.expect(dual_bad == 0, std::to_string(dual_bad) + " duality mismatches");
  o.expect(lift_bad == 0, std::to_string(lift_bad) + " lifting mismatches");
  o.detail << "10000 hyperplane pairs (" << above_count << " on or above), 10000 ball pairs (" << inside
           << " inside)";
}

// ---------------------------------------------------------------------------
// 8. Shallow census trend.

void criterion8(Outcome& o) {
  double fitted = 0;
  std::size_t rows = 0;
  std::ostringstream per_run;
  for (std::size_t n = 256; n <= 4096; n *= 2) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const Instance inst = k22_free_halfplanes(n, n, seed);
      const auto hs = ranges_as<Halfspace>(inst);
      std::vector<std::uint64_t> rs;
      for (std::uint64_t r = 2; 4 * r <= hs.size(); ++r) rs.push_back(r);
      const auto census = shallow_census_sweep(inst.points, hs, 2, rs);
      double run_max = 0;
      std::uint64_t nonzero = 0;
      for (const CensusRow& row : census) {
        run_max = std::max(run_max, row.ratio);
        nonzero += row.observed > 0;
      }
      rows += census.size();
      fitted = std::max(fitted, run_max);
      per_run << " n=" << n << "/s" << seed << ":" << run_max << "(" << nonzero << " nonempty)";
    }
  }
  o.expect(fitted <= 32, "fitted constant above 32");
  o.expect(fitted > 0, "every band was empty");
  o.detail << "fitted constant " << fitted << " over " << rows << " rows;" << per_run.str();
}

// ---------------------------------------------------------------------------
// 9. Fat-triangle reporting.

void criterion9(Outcome& o) {
  const std::size_t n = 4096;
  const Instance inst = random_fat(n, 1000, 2024, std::numbers::pi / 6);
  const auto tris = ranges_as<Triangle>(inst);
  const FatReportStructure fs(inst.points);
  const double lg = std::log2(static_cast<double>(n));
  const double storage_limit = 8 * static_cast<double>(n) * lg;
  const IncidenceGraph g = incidences_bruteforce(inst.points, tris);
  const auto by_range = g.points_of_ranges();
  std::uint64_t mismatches = 0, over = 0, max_visits = 0, total_k = 0, unaligned = 0;
  double worst = 0;
  for (std::size_t j = 0; j < tris.size(); ++j) {
    FatQueryStats st;
    const auto got = fs.query(tris[j], &st);
    mismatches += got != by_range[j];
    const double limit = 16 * lg * lg * lg + static_cast<double>(got.size());
    over += static_cast<double>(st.visits()) > limit;
    worst = std::max(worst, static_cast<double>(st.visits()) / limit);
    max_visits = std::max(max_visits, st.visits());
    total_k += got.size();
    unaligned += st.stratum < 0;
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatched queries");
  o.expect(static_cast<double>(fs.stored_entries()) <= storage_limit, "storage above 8 n log n");
  o.expect(over == 0, std::to_string(over) + " queries above the visit bound");
  o.detail << "stored " << fs.stored_entries() << " <= " << static_cast<std::uint64_t>(storage_limit)
           << ", max visits " << max_visits << " (worst ratio " << worst << "), K total " << total_k << ", "
           << unaligned << " unaligned, " << fs.integrity_events() << " brute-force fallbacks, "
           << fs.curtain_structures() << " curtain structures";
}

// ---------------------------------------------------------------------------
// 10. Shift alignment and centroid squares.

void criterion10(Outcome& o) {
  const auto tris = random_fat_triangles(10000, 10, std::numbers::pi / 6, 1 << 16);
  const Rational shift(1 << 16), scale(1, 4 << 16);
  std::array<std::uint64_t, 3> used{};
  for (const Triangle& t : tris) {
    std::vector<Point> shape;
    for (const Point& v : t.v) shape.push_back(Point{Rational((v[0] + shift) * scale), Rational((v[1] + shift) * scale)});
    try {
      const int s = shift_align(shape);
      ++used[static_cast<std::size_t>(s)];
      o.expect(aligned_square(shifted(shape, s)).has_value(), "returned shift does not align");
    } catch (const IntegrityError&) {
      o.fail("no shift aligns a triangle");
    }
  }

  std::uint64_t capped = 0;
  Rng rng(10);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 400));
    std::set<std::pair<std::int64_t, std::int64_t>> cells;
    // The spread must leave room for n distinct cells.
    const std::int64_t spread =
        std::max<std::int64_t>(std::int64_t{1} << rng.uniform(2, 24), static_cast<std::int64_t>(n));
    const std::int64_t cx = rng.uniform(0, (1 << 24) - 1), cy = rng.uniform(0, (1 << 24) - 1);
    while (cells.size() < n) {
      cells.emplace(std::clamp<std::int64_t>(cx + rng.uniform(-spread, spread), 0, (1 << 24) - 1),
                    std::clamp<std::int64_t>(cy + rng.uniform(-spread, spread), 0, (1 << 24) - 1));
    }
    std::vector<Point> pts;
    for (const auto& [x, y] : cells) pts.push_back(Point{ratio(x, 1 << 24), ratio(y, 1 << 24)});
    const CentroidResult r = centroid_square(pts);
    std::size_t inside = 0;
    std::array<std::size_t, 4> child{};
    for (const Point& p : pts) {
      if (!r.square.contains(p)) continue;
      ++inside;
      for (int q = 0; q < 4; ++q) child[q] += r.square.child(q % 2, q / 2).contains(p);
    }
    capped += r.capped;
    // With at most five distinct points a single point already holds n/5, so
    // the descent runs to the level cap and the node becomes a leaf.
    const bool children_small = std::all_of(child.begin(), child.end(), [&](std::size_t c) { return 5 * c < n; });
    const bool ok = inside == r.inside && 5 * (n - inside) <= 4 * n &&
                    (r.capped ? n <= 5 : 5 * inside <= 4 * n && children_small);
    if (!ok) o.fail("centroid trial " + std::to_string(trial));
  }

  // The same guarantee at every internal node of a built structure.
  const Instance inst = random_fat(5000, 0, 99, std::numbers::pi / 6);
  const FatReportStructure fs(inst.points);
  std::uint64_t nodes = 0;
  for (const FatSplit& s : fs.splits()) {
    ++nodes;
    if (5 * s.inside > 4 * s.points || 5 * s.outside > 4 * s.points) o.fail("unbalanced split in the structure");
  }
  o.detail << "shifts used " << used[0] << "/" << used[1] << "/" << used[2] << ", 10000 centroid trials (" << capped
           << " capped), " << nodes << " structure splits";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"oracle equivalence", criterion1},
      {"canonical dyadic decompositions", criterion2},
      {"interval bound", criterion3},
      {"biclique bound soundness", criterion4},
      {"Elekes grid and 5D image", criterion5},
      {"reduction certificates", criterion6},
      {"duality and lifting", criterion7},
      {"shallow census trend", criterion8},
      {"fat-triangle reporting", criterion9},
      {"centroid and shift machinery", criterion10},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(number)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", number, criteria[i].first,
                o.detail.str().c_str(), secs);
    for (const std::string& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
