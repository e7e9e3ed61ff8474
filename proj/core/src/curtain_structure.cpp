#include "incidence/curtain_structure.hpp"

#include <algorithm>

namespace incidence {

CurtainStructure::CurtainStructure(std::vector<Point> points, std::size_t leaf_size)
    : points_(std::move(points)), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  for (const Point& p : points_) {
    if (p.dim() != 2) throw InvalidInput("curtain structure expects 2D points");
  }
  by_x_.resize(points_.size());
  for (std::uint32_t i = 0; i < by_x_.size(); ++i) by_x_[i] = i;
  std::sort(by_x_.begin(), by_x_.end(), [this](std::uint32_t a, std::uint32_t b) {
    if (points_[a][0] != points_[b][0]) return points_[a][0] < points_[b][0];
    if (points_[a][1] != points_[b][1]) return points_[a][1] < points_[b][1];
    return a < b;
  });
  if (!points_.empty()) build(0, points_.size(), 1);
}

int CurtainStructure::build(std::size_t lo, std::size_t hi, std::size_t depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{lo, hi, {}, -1, -1});
  depth_ = std::max(depth_, depth);
  entries_ += hi - lo;
  auto y_less = [this](std::uint32_t a, std::uint32_t b) {
    if (points_[a][1] != points_[b][1]) return points_[a][1] < points_[b][1];
    return a < b;
  };
  std::vector<std::uint32_t> ids;
  if (hi - lo <= leaf_size_) {
    ids.assign(by_x_.begin() + static_cast<std::ptrdiff_t>(lo), by_x_.begin() + static_cast<std::ptrdiff_t>(hi));
    std::sort(ids.begin(), ids.end(), y_less);
  } else {
    const std::size_t mid = lo + (hi - lo) / 2;
    const int l = build(lo, mid, depth + 1);
    const int r = build(mid, hi, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    const auto& a = nodes_[l].by_y;
    const auto& b = nodes_[r].by_y;
    ids.resize(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), ids.begin(), y_less);
  }
  nodes_[id].by_y = std::move(ids);
  return id;
}

void CurtainStructure::canonical(int node, std::size_t lo, std::size_t hi, std::vector<int>& out,
                                 CurtainQueryStats& st) const {
  const Node& nd = nodes_[node];
  if (hi <= nd.lo || nd.hi <= lo) return;
  ++st.visits;
  if ((lo <= nd.lo && nd.hi <= hi) || nd.left < 0) {
    out.push_back(node);
    return;
  }
  canonical(nd.left, lo, hi, out, st);
  canonical(nd.right, lo, hi, out, st);
}

void CurtainStructure::report(int node, const Curtain& c, const Rational* floor, std::vector<Index>& out,
                              CurtainQueryStats& st) const {
  ++st.visits;
  const Node& nd = nodes_[node];
  const auto y_of = [this](std::uint32_t id) -> const Rational& { return points_[id][1]; };

  if (nd.left < 0) {
    for (std::uint32_t id : nd.by_y) {
      const Point& p = points_[id];
      if (floor && p[1] <= *floor) continue;
      ++st.tested;
      if (p[1] <= c.a * p[0] + c.b) out.push_back(id);
    }
    return;
  }

  const Rational v_lo = c.a * points_[by_x_[nd.lo]][0] + c.b;
  const Rational v_hi = c.a * points_[by_x_[nd.hi - 1]][0] + c.b;
  const Rational& line_min = std::min(v_lo, v_hi);
  const Rational& line_max = std::max(v_lo, v_hi);

  auto first_above = [&](const Rational& y) {
    return std::upper_bound(nd.by_y.begin(), nd.by_y.end(), y,
                            [&](const Rational& v, std::uint32_t id) { return v < y_of(id); });
  };
  const auto start = floor ? first_above(*floor) : nd.by_y.begin();
  const auto sure_end = first_above(line_min);
  for (auto it = start; it < sure_end; ++it) out.push_back(*it);

  const Rational next_floor = floor ? std::max(*floor, line_min) : line_min;
  const auto band_begin = first_above(next_floor);
  const auto band_end = first_above(line_max);
  if (band_begin < band_end) {
    report(nd.left, c, &next_floor, out, st);
    report(nd.right, c, &next_floor, out, st);
  }
}

std::vector<Index> CurtainStructure::query(const Curtain& c, CurtainQueryStats* stats) const {
  CurtainQueryStats local;
  CurtainQueryStats& st = stats ? *stats : local;
  std::vector<Index> out;
  if (points_.empty()) return out;
  if (c.lo && c.hi && *c.lo > *c.hi) return out;

  const auto x_of = [this](std::uint32_t id) -> const Rational& { return points_[id][0]; };
  std::size_t lo = 0, hi = by_x_.size();
  if (c.lo) {
    lo = static_cast<std::size_t>(
        std::lower_bound(by_x_.begin(), by_x_.end(), *c.lo,
                         [&](std::uint32_t id, const Rational& v) { return x_of(id) < v; }) -
        by_x_.begin());
  }
  if (c.hi) {
    hi = static_cast<std::size_t>(
        std::upper_bound(by_x_.begin(), by_x_.end(), *c.hi,
                         [&](const Rational& v, std::uint32_t id) { return v < x_of(id); }) -
        by_x_.begin());
  }
  if (lo >= hi) return out;

  std::vector<int> nodes;
  canonical(0, lo, hi, nodes, st);
  st.canonical += nodes.size();
  for (int node : nodes) {
    const Node& nd = nodes_[node];
    if (lo <= nd.lo && nd.hi <= hi) {
      report(node, c, nullptr, out, st);
    } else {
      // A partially covered leaf: test its points in the query range directly.
      for (std::size_t pos = std::max(lo, nd.lo); pos < std::min(hi, nd.hi); ++pos) {
        const Point& p = points_[by_x_[pos]];
        ++st.tested;
        if (p[1] <= c.a * p[0] + c.b) out.push_back(by_x_[pos]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  st.reported += out.size();
  return out;
}

}  // namespace incidence
