#include "incidence/curtain_audit.hpp"

#include <algorithm>
#include <numeric>

#include "incidence/graph.hpp"

namespace incidence {

namespace {

struct RankedCurtain {
  Index id;
  std::int64_t lo, hi;  // rank interval, lo > hi when empty
};

class CurtainEngine {
 public:
  CurtainEngine(const std::vector<Point>& points, const std::vector<Curtain>& curtains,
                const std::vector<std::int64_t>& rank, const CurtainAuditOptions& options)
      : points_(points), curtains_(curtains), rank_(rank), options_(options) {}

  // `pts` is sorted by rank.
  SlabNode audit(const std::vector<Index>& pts, const std::vector<RankedCurtain>& cs) {
    SlabNode node;
    node.kind = SlabNodeKind::curtain;
    node.dims = 2;
    node.points = pts.size();
    node.ranges = cs.size();
    if (!pts.empty()) {
      node.rank_lo = static_cast<std::uint64_t>(rank_[pts.front()]);
      node.rank_hi = static_cast<std::uint64_t>(rank_[pts.back()]);
    }
    if (pts.size() <= std::max<std::size_t>(1, options_.leaf_size)) {
      node.kind = SlabNodeKind::leaf;
      for (const RankedCurtain& c : cs) {
        for (Index p : pts) {
          if (rank_[p] >= c.lo && rank_[p] <= c.hi && below_line(p, c.id)) ++node.attributed;
        }
      }
      return node;
    }

    const std::size_t half = pts.size() / 2;
    const std::vector<Index> left(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<Index> right(pts.begin() + static_cast<std::ptrdiff_t>(half), pts.end());
    const std::int64_t first = rank_[pts.front()], last = rank_[pts.back()];
    const std::int64_t left_end = rank_[left.back()], right_begin = rank_[right.front()];

    std::vector<RankedCurtain> to_left, to_right;
    for (const RankedCurtain& c : cs) {
      const std::int64_t lo = std::max(c.lo, first), hi = std::min(c.hi, last);
      if (lo > hi) {
        ++node.empty;
      } else if (hi <= left_end) {
        ++node.inside;
        to_left.push_back(c);
      } else if (lo >= right_begin) {
        ++node.inside;
        to_right.push_back(c);
      } else {
        ++node.m0;
        node.crossing += 2;
        const Curtain& cur = curtains_[c.id];
        // Left half: {y <= ax+b, -rank <= -lo}; right half: {y <= ax+b, rank <= hi}.
        const Wedge wl{3, cur.a, cur.b, Rational(-c.lo)};
        const Wedge wr{3, cur.a, cur.b, Rational(c.hi)};
        for (Index p : left) {
          if (contains(wl, Point{points_[p][0], points_[p][1], Rational(-rank_[p])})) ++node.attributed;
        }
        for (Index p : right) {
          if (contains(wr, Point{points_[p][0], points_[p][1], Rational(rank_[p])})) ++node.attributed;
        }
      }
    }
    node.ledger_term = static_cast<double>(options_.k) * static_cast<double>(pts.size()) +
                       static_cast<double>(options_.k) * static_cast<double>(node.m0);
    if (!to_left.empty()) node.children.push_back(audit(left, to_left));
    if (!to_right.empty()) node.children.push_back(audit(right, to_right));
    return node;
  }

 private:
  bool below_line(Index p, Index c) const {
    const Curtain& cur = curtains_[c];
    return points_[p][1] <= cur.a * points_[p][0] + cur.b;
  }

  const std::vector<Point>& points_;
  const std::vector<Curtain>& curtains_;
  const std::vector<std::int64_t>& rank_;
  const CurtainAuditOptions& options_;
};

}  // namespace

RecursionReport curtain_audit(const std::vector<Point>& points, const std::vector<Curtain>& curtains,
                              const CurtainAuditOptions& options) {
  for (const Point& p : points) {
    if (p.dim() != 2) throw InvalidInput("curtain audit expects 2D points");
  }
  std::vector<Index> order(points.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
    return a < b;
  });
  std::vector<std::int64_t> rank(points.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<std::int64_t>(r);

  std::vector<RankedCurtain> cs;
  cs.reserve(curtains.size());
  for (Index j = 0; j < curtains.size(); ++j) {
    const Curtain& c = curtains[j];
    std::int64_t lo = 0, hi = static_cast<std::int64_t>(order.size()) - 1;
    if (c.lo) {
      lo = std::lower_bound(order.begin(), order.end(), *c.lo,
                            [&](Index p, const Rational& v) { return points[p][0] < v; }) -
           order.begin();
    }
    if (c.hi) {
      hi = (std::upper_bound(order.begin(), order.end(), *c.hi,
                             [&](const Rational& v, Index p) { return v < points[p][0]; }) -
            order.begin()) -
           1;
    }
    cs.push_back(RankedCurtain{j, lo, hi});
  }

  CurtainEngine engine(points, curtains, rank, options);
  RecursionReport report;
  report.b = 2;
  report.k = options.k;
  report.root = engine.audit(order, cs);
  summarize(report);
  if (options.check_oracle) report.oracle = incidences_bruteforce(points, curtains).incidences();
  return report;
}

}  // namespace incidence
