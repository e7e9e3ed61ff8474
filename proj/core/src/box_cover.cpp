#include "incidence/box_cover.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "incidence/dyadic.hpp"

namespace incidence {

bool BoxCoverResult::within_bounds() const {
  return std::all_of(levels.begin(), levels.end(), [](const CoverLevelLedger& l) { return l.within_bounds(); });
}

namespace {

class CoverBuilder {
 public:
  CoverBuilder(const std::vector<Point>& points, const std::vector<Box>& boxes, std::size_t d)
      : points_(points), boxes_(boxes), d_(d) {
    result_.levels.resize(d);
    for (std::size_t a = 0; a < d; ++a) result_.levels[a].axis = static_cast<unsigned>(a);
  }

  BoxCoverResult run() {
    std::vector<Index> ps(points_.size());
    std::iota(ps.begin(), ps.end(), Index{0});
    std::vector<Index> bs(boxes_.size());
    std::iota(bs.begin(), bs.end(), Index{0});
    split(0, std::move(ps), bs);
    return std::move(result_);
  }

 private:
  void split(std::size_t axis, std::vector<Index> ps, const std::vector<Index>& bs) {
    if (ps.empty() || bs.empty()) return;
    std::stable_sort(ps.begin(), ps.end(), [&](Index a, Index b) {
      const int c = cmp(points_[a][axis], points_[b][axis]);
      return c != 0 ? c < 0 : a < b;
    });
    std::vector<Rational> keys;
    keys.reserve(ps.size());
    for (Index p : ps) keys.push_back(points_[p][axis]);
    const std::uint64_t n = ps.size();

    CoverLevelLedger& ledger = result_.levels[axis];
    ++ledger.subproblems;
    const std::uint64_t lg = ceil_log2(n);
    ledger.point_bound += n * (lg + 1);
    ledger.box_bound += bs.size() * std::max<std::uint64_t>(1, 2 * lg);

    std::map<DyadicRange, std::vector<Index>> classes;
    for (Index b : bs) {
      const Box& box = boxes_[b];
      const std::size_t alpha =
          box.lo[axis] ? std::lower_bound(keys.begin(), keys.end(), *box.lo[axis]) - keys.begin() : 0;
      const std::size_t stop =
          box.hi[axis] ? std::upper_bound(keys.begin(), keys.end(), *box.hi[axis]) - keys.begin() : keys.size();
      if (alpha >= stop) continue;
      for_each_canonical(alpha, stop - 1, n, [&](const DyadicRange& r) { classes[r].push_back(b); });
    }

    for (auto& [range, members] : classes) {
      std::vector<Index> class_points(ps.begin() + static_cast<std::ptrdiff_t>(range.first()),
                                      ps.begin() + static_cast<std::ptrdiff_t>(range.last() + 1));
      ++ledger.classes;
      ledger.class_points += class_points.size();
      ledger.class_boxes += members.size();
      if (axis + 1 == d_) {
        result_.cover.pairs.push_back(BicliquePair{std::move(class_points), std::move(members)});
      } else {
        split(axis + 1, std::move(class_points), members);
      }
    }
  }

  const std::vector<Point>& points_;
  const std::vector<Box>& boxes_;
  std::size_t d_;
  BoxCoverResult result_;
};

}  // namespace

BoxCoverResult build_box_cover(const std::vector<Point>& points, const std::vector<Box>& boxes) {
  std::size_t d = 0;
  if (!boxes.empty()) {
    d = boxes.front().dim();
  } else if (!points.empty()) {
    d = points.front().dim();
  }
  for (const Box& b : boxes) {
    if (b.dim() != d) throw InvalidInput("boxes of mixed dimension");
  }
  for (const Point& p : points) {
    if (p.dim() != d) throw InvalidInput("point dimension does not match the boxes");
  }
  if (d == 0) return {};
  return CoverBuilder(points, boxes, d).run();
}

BoxCoverResult build_box_cover(const std::vector<Point>& points, const std::vector<Range>& ranges, std::size_t d) {
  std::vector<Box> boxes;
  boxes.reserve(ranges.size());
  for (const Range& r : ranges) {
    const Box* b = std::get_if<Box>(&r);
    if (b == nullptr) throw Unsupported("box cover requires box ranges, got " + type_name(r));
    if (b->dim() != d) throw InvalidInput("box dimension does not match d");
    boxes.push_back(*b);
  }
  for (const Point& p : points) {
    if (p.dim() != d) throw InvalidInput("point dimension does not match d");
  }
  if (d == 0) return {};
  return CoverBuilder(points, boxes, d).run();
}

}  // namespace incidence
