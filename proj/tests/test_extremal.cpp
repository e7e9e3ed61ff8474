#include "doctest.h"
#include "incidence/extremal.hpp"
#include "incidence/generators.hpp"
#include "oracles.hpp"

using namespace incidence;

TEST_CASE("Elekes grids") {
  const PointLineInstance one = elekes_grid(1);
  CHECK(one.points.size() == 2);
  CHECK(one.lines.size() == 1);
  CHECK(oracle::edges(one.points, one.lines).size() == 1);

  const PointLineInstance two = elekes_grid(2);
  CHECK(two.points.size() == 16);
  CHECK(two.lines.size() == 8);
  const oracle::EdgeSet e2 = oracle::edges(two.points, two.lines);
  CHECK(e2.size() == 16);
  CHECK_FALSE(oracle::has_kkk(16, 8, e2, 2));

  for (unsigned N = 1; N <= 8; ++N) {
    const PointLineInstance g = elekes_grid(N);
    CHECK(g.points.size() == 2 * N * N * N);
    CHECK(g.lines.size() == N * N * N);
    const oracle::EdgeSet e = oracle::edges(g.points, g.lines);
    CHECK(e.size() == std::size_t{N} * N * N * N);
    std::vector<std::size_t> per_line(g.lines.size(), 0);
    for (const auto& [p, l] : e) ++per_line[l];
    for (std::size_t c : per_line) CHECK(c == N);
    const IncidenceGraph graph = IncidenceGraph::from_edges(g.points.size(), g.lines.size(),
                                                            std::vector<Edge>(e.begin(), e.end()));
    CHECK(find_kkk(graph, 2).verdict == KkkVerdict::none);
  }
}

TEST_CASE("5D lower bound instances") {
  for (unsigned N = 1; N <= 8; ++N) {
    ReductionResult r = lower_bound_5d(N);
    CHECK(certify(r));
    CHECK(r.certificate.target_edges == std::uint64_t{N} * N * N * N);
    if (N == 2 || N == 4) {
      REQUIRE(r.parts.size() == 1);
      const oracle::EdgeSet e = oracle::edges(r.parts[0].points, r.parts[0].ranges);
      CHECK(e.size() == std::size_t{N} * N * N * N);
      CHECK_FALSE(oracle::has_kkk(r.parts[0].points.size(), r.parts[0].ranges.size(), e, 2));
    }
  }
}

TEST_CASE("favorability") {
  const auto interval = [](int a, int b) { return make_interval(Rational(a), Rational(b)); };
  std::vector<Point> pts;
  for (int x = 0; x < 12; ++x) pts.push_back(Point{Rational(x)});

  const FavorableVerdict good = verify_favorable(pts, {interval(0, 3), interval(4, 7), interval(8, 11)}, 4);
  CHECK(good.favorable());
  CHECK(good.incidences == 12);
  CHECK(good.implied_lower_bound == 12);

  const FavorableVerdict shared = verify_favorable(pts, {interval(0, 5), interval(4, 9)}, 2);
  CHECK(shared.size_condition);
  CHECK_FALSE(shared.shared_condition);
  CHECK(shared.shared_witness.points == std::vector<Index>{4, 5});

  const FavorableVerdict small = verify_favorable(pts, {interval(0, 3), interval(4, 5)}, 3);
  CHECK_FALSE(small.size_condition);
  CHECK(small.small_box == Index{1});

  // Condition (ii) is K_{2,2}-freeness.
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = random_boxes(12, 6, 1 + seed % 2, seed, 10);
    std::vector<Box> boxes;
    for (const Range& r : inst.ranges) boxes.push_back(std::get<Box>(r));
    const oracle::EdgeSet e = oracle::edges(inst.points, boxes);
    const FavorableVerdict v = verify_favorable(inst.points, boxes, 1);
    CHECK(v.shared_condition == !oracle::has_kkk(inst.points.size(), boxes.size(), e, 2));
    CHECK(v.incidences == e.size());
  }
}

TEST_CASE("bound formulas") {
  BoundFormula interval{BoundFamily::interval};
  CHECK(eval_bound(interval, 6, 2, 2) == doctest::Approx(24));

  BoundFormula box{BoundFamily::box, 2};
  CHECK(eval_bound(box, 65536, 0, 1) == doctest::Approx(262144));
  CHECK(eval_bound(box, 1, 5, 2, 3) == doctest::Approx(2 * 6 * 3));

  CHECK_THROWS_AS(parse_bound_family("hexagons"), InvalidInput);
  for (const char* tag : {"interval", "box", "polyhedra", "halfspace", "ball", "union-complexity", "pseudo-disks",
                          "fat"}) {
    CHECK(to_string(parse_bound_family(tag)) == tag);
  }

  std::vector<BoundFormula> all;
  for (BoundFamily f : {BoundFamily::interval, BoundFamily::box, BoundFamily::polyhedra, BoundFamily::halfspace,
                        BoundFamily::ball, BoundFamily::union_complexity, BoundFamily::pseudo_disks, BoundFamily::fat}) {
    for (unsigned d : {1u, 2u, 3u, 5u}) {
      BoundFormula b{f, d, d + 1};
      b.f0 = [](double r) { return r * std::log2(r + 2); };
      all.push_back(b);
    }
  }
  const std::vector<double> grid{1, 2, 3, 4, 7, 16, 100, 1000, 65536, 1e7};
  for (const BoundFormula& b : all) {
    for (double n : grid) {
      for (double m : grid) {
        for (double k : {1.0, 2.0, 5.0}) {
          const double v = eval_bound(b, n, m, k);
          CHECK(v >= 0);
          CHECK(eval_bound(b, n * 2, m, k) >= v);
          CHECK(eval_bound(b, n, m * 2, k) >= v);
          CHECK(eval_bound(b, n, m, k + 1) >= v);
        }
      }
    }
  }
}
