#include "incidence/slab_audit.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "incidence/graph.hpp"
#include "json.hpp"

namespace incidence {

namespace {

using Rank = std::int64_t;

struct RankInterval {
  Rank lo = 0, hi = -1;  // empty when lo > hi
};

// Global rank space: per axis, each point's rank and each box's rank interval.
struct RankSpace {
  std::size_t d = 0;
  std::vector<std::vector<Rank>> point_rank;         // [axis][point]
  std::vector<std::vector<RankInterval>> box_ranks;  // [axis][box]

  RankSpace(const std::vector<Point>& points, const std::vector<Box>& boxes, std::size_t dim) : d(dim) {
    point_rank.assign(d, std::vector<Rank>(points.size()));
    box_ranks.assign(d, std::vector<RankInterval>(boxes.size()));
    std::vector<Index> order(points.size());
    std::vector<Rational> sorted;
    for (std::size_t a = 0; a < d; ++a) {
      std::iota(order.begin(), order.end(), Index{0});
      std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return points[x][a] < points[y][a]; });
      sorted.clear();
      for (std::size_t r = 0; r < order.size(); ++r) {
        point_rank[a][order[r]] = static_cast<Rank>(r);
        sorted.push_back(points[order[r]][a]);
      }
      for (std::size_t j = 0; j < boxes.size(); ++j) {
        const Box& bx = boxes[j];
        const Rank lo = bx.lo[a] ? std::lower_bound(sorted.begin(), sorted.end(), *bx.lo[a]) - sorted.begin() : 0;
        const Rank hi = bx.hi[a] ? (std::upper_bound(sorted.begin(), sorted.end(), *bx.hi[a]) - sorted.begin()) - 1
                                 : static_cast<Rank>(sorted.size()) - 1;
        box_ranks[a][j] = RankInterval{lo, hi};
      }
    }
  }
};

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Number of inserted positions < i.
  std::uint64_t prefix(std::size_t i) const {
    std::uint64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::uint64_t> tree_;
};

struct RectQuery {
  Rank xl, xh, yl, yh;
};

// Exact counts of points (given sorted by x rank) inside each rank rectangle,
// by one sweep over x with a Fenwick tree over y.
std::uint64_t count_offline(const std::vector<std::pair<Rank, Rank>>& pts, const std::vector<RectQuery>& queries) {
  if (queries.empty() || pts.empty()) return 0;
  std::vector<Rank> ys;
  ys.reserve(pts.size());
  for (const auto& p : pts) ys.push_back(p.second);
  std::sort(ys.begin(), ys.end());

  struct Event {
    std::size_t pos;
    std::size_t ylo, yhi;  // compressed half-open [ylo, yhi)
    int sign;
  };
  std::vector<Event> events;
  events.reserve(2 * queries.size());
  for (const RectQuery& q : queries) {
    const auto by_x = [](const std::pair<Rank, Rank>& p, Rank v) { return p.first < v; };
    const std::size_t lo_pos = std::lower_bound(pts.begin(), pts.end(), q.xl, by_x) - pts.begin();
    const std::size_t hi_pos = std::lower_bound(pts.begin(), pts.end(), q.xh + 1, by_x) - pts.begin();
    if (lo_pos >= hi_pos || q.yl > q.yh) continue;
    const std::size_t ylo = std::lower_bound(ys.begin(), ys.end(), q.yl) - ys.begin();
    const std::size_t yhi = std::upper_bound(ys.begin(), ys.end(), q.yh) - ys.begin();
    if (ylo >= yhi) continue;
    events.push_back({hi_pos, ylo, yhi, +1});
    events.push_back({lo_pos, ylo, yhi, -1});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });
  Fenwick fw(ys.size());
  std::size_t inserted = 0;
  std::int64_t total = 0;
  for (const Event& e : events) {
    while (inserted < e.pos) {
      fw.add(std::lower_bound(ys.begin(), ys.end(), pts[inserted].second) - ys.begin());
      ++inserted;
    }
    const std::int64_t c = static_cast<std::int64_t>(fw.prefix(e.yhi) - fw.prefix(e.ylo));
    total += e.sign * c;
  }
  return static_cast<std::uint64_t>(total);
}

class Engine {
 public:
  Engine(const RankSpace& rs, const AuditOptions& opt) : rs_(rs), b_(opt.b), k_(opt.k) {}

  // Dispatch on the number of active axes.
  SlabNode audit(std::vector<Index> pts, const std::vector<Index>& boxes, const std::vector<unsigned>& axes) {
    if (axes.size() == 1) return interval_node(pts, boxes, axes[0]);
    if (axes.size() == 2) return rect_node(std::move(pts), boxes, axes[0], axes[1]);
    return box_node(std::move(pts), boxes, axes);
  }

 private:
  bool inside_all(Index p, Index box, const std::vector<unsigned>& axes) const {
    for (unsigned a : axes) {
      const RankInterval& iv = rs_.box_ranks[a][box];
      const Rank r = rs_.point_rank[a][p];
      if (r < iv.lo || r > iv.hi) return false;
    }
    return true;
  }

  void sort_by(std::vector<Index>& pts, unsigned axis) const {
    std::sort(pts.begin(), pts.end(),
              [&](Index x, Index y) { return rs_.point_rank[axis][x] < rs_.point_rank[axis][y]; });
  }

  SlabNode leaf(const std::vector<Index>& pts, const std::vector<Index>& boxes, const std::vector<unsigned>& axes) {
    SlabNode node;
    node.kind = SlabNodeKind::leaf;
    node.dims = static_cast<unsigned>(axes.size());
    node.axis = axes[0];
    node.points = pts.size();
    node.ranges = boxes.size();
    for (Index bx : boxes) {
      std::uint64_t c = 0;
      for (Index p : pts) c += inside_all(p, bx, axes);
      if (c == 0) ++node.empty;
      node.attributed += c;
    }
    return node;
  }

  void set_span(SlabNode& node, const std::vector<Index>& sorted_pts, unsigned axis) const {
    if (sorted_pts.empty()) return;
    node.rank_lo = static_cast<std::uint64_t>(rs_.point_rank[axis][sorted_pts.front()]);
    node.rank_hi = static_cast<std::uint64_t>(rs_.point_rank[axis][sorted_pts.back()]);
  }

  SlabNode interval_node(std::vector<Index> pts, const std::vector<Index>& boxes, unsigned axis) {
    SlabNode node;
    node.kind = SlabNodeKind::interval;
    node.dims = 1;
    node.axis = axis;
    node.points = pts.size();
    node.ranges = boxes.size();
    std::vector<Rank> ranks;
    ranks.reserve(pts.size());
    for (Index p : pts) ranks.push_back(rs_.point_rank[axis][p]);
    std::sort(ranks.begin(), ranks.end());
    if (!ranks.empty()) {
      node.rank_lo = static_cast<std::uint64_t>(ranks.front());
      node.rank_hi = static_cast<std::uint64_t>(ranks.back());
    }
    for (Index bx : boxes) {
      const RankInterval& iv = rs_.box_ranks[axis][bx];
      const auto c = std::upper_bound(ranks.begin(), ranks.end(), iv.hi) -
                     std::lower_bound(ranks.begin(), ranks.end(), iv.lo);
      if (c <= 0) {
        ++node.empty;
      } else {
        ++node.crossing;
        node.attributed += static_cast<std::uint64_t>(c);
      }
    }
    node.m0 = node.crossing;
    return node;
  }

  // Splits sorted points into b chunks; returns chunk start offsets (size b + 1).
  std::vector<std::size_t> chunks(std::size_t n) const {
    std::vector<std::size_t> cut(b_ + 1);
    for (std::size_t i = 0; i <= b_; ++i) cut[i] = i * n / b_;
    return cut;
  }

  // Slab range [i, j] touched by a rank interval; i > j when none.
  std::pair<std::size_t, std::size_t> touched(const std::vector<Rank>& first, const std::vector<Rank>& last,
                                              const RankInterval& iv) const {
    const std::size_t i = std::lower_bound(last.begin(), last.end(), iv.lo) - last.begin();
    const std::size_t j_end = std::upper_bound(first.begin(), first.end(), iv.hi) - first.begin();
    if (i >= j_end || iv.lo > iv.hi) return {1, 0};
    return {i, j_end - 1};
  }

  SlabNode rect_node(std::vector<Index> pts, const std::vector<Index>& rects, unsigned ax, unsigned ay) {
    if (pts.size() <= b_) {
      SlabNode node = leaf(pts, rects, {ax, ay});
      sort_by(pts, ax);
      set_span(node, pts, ax);
      return node;
    }
    sort_by(pts, ax);
    SlabNode node;
    node.kind = SlabNodeKind::rect;
    node.dims = 2;
    node.axis = ax;
    node.points = pts.size();
    node.ranges = rects.size();
    set_span(node, pts, ax);

    const auto cut = chunks(pts.size());
    std::vector<Rank> first(b_), last(b_);
    for (std::size_t t = 0; t < b_; ++t) {
      first[t] = rs_.point_rank[ax][pts[cut[t]]];
      last[t] = rs_.point_rank[ax][pts[cut[t + 1] - 1]];
    }
    std::vector<std::vector<Index>> child_rects(b_);
    std::vector<std::vector<RectQuery>> queries(b_);
    for (Index r : rects) {
      const RankInterval& xi = rs_.box_ranks[ax][r];
      const RankInterval& yi = rs_.box_ranks[ay][r];
      const auto [i, j] = touched(first, last, xi);
      if (i > j) {
        ++node.empty;
        continue;
      }
      const bool spans_i = xi.lo <= first[i] && xi.hi >= last[i];
      if (i == j && !spans_i) {
        ++node.inside;
        child_rects[i].push_back(r);
        continue;
      }
      ++node.m0;
      for (std::size_t t = i; t <= j; ++t) {
        const bool spans = xi.lo <= first[t] && xi.hi >= last[t];
        spans ? ++node.crossing : ++node.three_sided;
        queries[t].push_back(RectQuery{xi.lo, xi.hi, yi.lo, yi.hi});
      }
    }
    for (std::size_t t = 0; t < b_; ++t) {
      std::vector<Index> slab(pts.begin() + static_cast<std::ptrdiff_t>(cut[t]),
                              pts.begin() + static_cast<std::ptrdiff_t>(cut[t + 1]));
      if (!queries[t].empty()) {
        std::vector<std::pair<Rank, Rank>> xy;
        xy.reserve(slab.size());
        for (Index p : slab) xy.emplace_back(rs_.point_rank[ax][p], rs_.point_rank[ay][p]);
        node.attributed += count_offline(xy, queries[t]);
      }
      if (!child_rects[t].empty()) node.children.push_back(rect_node(std::move(slab), child_rects[t], ax, ay));
    }
    node.ledger_term = static_cast<double>(k_) * static_cast<double>(node.points) +
                       static_cast<double>(b_) * k_ * static_cast<double>(node.m0);
    return node;
  }

  SlabNode box_node(std::vector<Index> pts, const std::vector<Index>& boxes, const std::vector<unsigned>& axes) {
    const unsigned ax = axes[0];
    const std::vector<unsigned> rest(axes.begin() + 1, axes.end());
    const std::uint64_t per_face = std::uint64_t{1} << (axes.size() - 1);
    sort_by(pts, ax);
    if (pts.size() <= b_) {
      SlabNode node = leaf(pts, boxes, axes);
      set_span(node, pts, ax);
      return node;
    }
    SlabNode node;
    node.kind = SlabNodeKind::box;
    node.dims = static_cast<unsigned>(axes.size());
    node.axis = ax;
    node.points = pts.size();
    node.ranges = boxes.size();
    set_span(node, pts, ax);
    const Rank node_first = rs_.point_rank[ax][pts.front()];
    const Rank node_last = rs_.point_rank[ax][pts.back()];

    const auto cut = chunks(pts.size());
    std::vector<Rank> first(b_), last(b_);
    for (std::size_t t = 0; t < b_; ++t) {
      first[t] = rs_.point_rank[ax][pts[cut[t]]];
      last[t] = rs_.point_rank[ax][pts[cut[t + 1] - 1]];
    }
    auto faces_inside = [](const RankInterval& iv, Rank lo, Rank hi) {
      return static_cast<std::uint64_t>(iv.lo > lo && iv.lo <= hi) + static_cast<std::uint64_t>(iv.hi >= lo && iv.hi < hi);
    };

    std::vector<Index> node_long;
    std::vector<std::vector<Index>> child_boxes(b_), slab_long(b_);
    for (Index bx : boxes) {
      const RankInterval& iv = rs_.box_ranks[ax][bx];
      const auto [i, j] = touched(first, last, iv);
      if (i > j) {
        ++node.empty;
        continue;
      }
      const std::uint64_t faces = faces_inside(iv, node_first, node_last);
      node.vertices += per_face * faces;
      if (faces == 0) {
        // Spans every point of the node: one (d-1)-dimensional problem here.
        ++node.crossing;
        ++node.m0;
        node_long.push_back(bx);
        continue;
      }
      bool sent = false, projected = false;
      for (std::size_t t = i; t <= j; ++t) {
        if (faces_inside(iv, first[t], last[t]) > 0) {
          child_boxes[t].push_back(bx);
          sent = true;
        } else {
          ++node.crossing;
          slab_long[t].push_back(bx);
          projected = true;
        }
      }
      if (sent) ++node.inside;
      if (projected) ++node.m0;
    }

    if (!node_long.empty()) node.projections.push_back(audit(pts, node_long, rest));
    for (std::size_t t = 0; t < b_; ++t) {
      std::vector<Index> slab(pts.begin() + static_cast<std::ptrdiff_t>(cut[t]),
                              pts.begin() + static_cast<std::ptrdiff_t>(cut[t + 1]));
      if (!slab_long[t].empty()) node.projections.push_back(audit(slab, slab_long[t], rest));
      if (!child_boxes[t].empty()) {
        SlabNode child = box_node(std::move(slab), child_boxes[t], axes);
        node.child_vertices += child.kind == SlabNodeKind::box ? child.vertices : leaf_vertices(child_boxes[t], ax, child);
        node.children.push_back(std::move(child));
      }
    }
    node.vertices_ok = node.child_vertices <= node.vertices;
    return node;
  }

  // Vertex count of a leaf child, measured the same way as for inner nodes.
  std::uint64_t leaf_vertices(const std::vector<Index>& boxes, unsigned ax, SlabNode& child) const {
    std::uint64_t v = 0;
    const std::uint64_t per_face = std::uint64_t{1} << (child.dims - 1);
    for (Index bx : boxes) {
      const RankInterval& iv = rs_.box_ranks[ax][bx];
      const Rank lo = static_cast<Rank>(child.rank_lo), hi = static_cast<Rank>(child.rank_hi);
      v += per_face * (static_cast<std::uint64_t>(iv.lo > lo && iv.lo <= hi) +
                       static_cast<std::uint64_t>(iv.hi >= lo && iv.hi < hi));
    }
    child.vertices = v;
    return v;
  }

  const RankSpace& rs_;
  std::size_t b_;
  unsigned k_;
};

void summarize(const SlabNode& node, RecursionReport& report) {
  ++report.nodes;
  report.total += node.attributed;
  if (node.ledger_term > 0) {
    report.fitted_constant = std::max(report.fitted_constant, static_cast<double>(node.attributed) / node.ledger_term);
  }
  if (!node.vertices_ok) report.vertices_ok = false;
  for (const SlabNode& c : node.children) summarize(c, report);
  for (const SlabNode& c : node.projections) summarize(c, report);
}

std::size_t check_dimension(const std::vector<Point>& points, const std::vector<Box>& boxes) {
  std::size_t d = 0;
  if (!points.empty()) d = points.front().dim();
  else if (!boxes.empty()) d = boxes.front().dim();
  for (const Point& p : points) {
    if (p.dim() != d) throw InvalidInput("points of mixed dimension");
  }
  for (const Box& b : boxes) {
    if (b.dim() != d) throw InvalidInput("box dimension does not match the points");
  }
  return d;
}

RecursionReport run(const std::vector<Point>& points, const std::vector<Box>& boxes, const AuditOptions& options,
                    std::size_t d) {
  const RankSpace rs(points, boxes, d);
  Engine engine(rs, options);
  std::vector<Index> pts(points.size());
  std::iota(pts.begin(), pts.end(), Index{0});
  std::vector<Index> bs(boxes.size());
  std::iota(bs.begin(), bs.end(), Index{0});
  std::vector<unsigned> axes(d);
  std::iota(axes.begin(), axes.end(), 0u);

  RecursionReport report;
  report.b = options.b;
  report.k = options.k;
  report.root = engine.audit(std::move(pts), bs, axes);
  summarize(report.root, report);
  if (options.check_oracle) report.oracle = incidences_bruteforce(points, boxes).incidences();
  return report;
}

const char* kind_name(SlabNodeKind k) {
  switch (k) {
    case SlabNodeKind::rect:
      return "rect";
    case SlabNodeKind::box:
      return "box";
    case SlabNodeKind::leaf:
      return "leaf";
    case SlabNodeKind::interval:
      return "interval";
    case SlabNodeKind::curtain:
      return "curtain";
  }
  return "?";
}

nlohmann::json node_json(const SlabNode& n) {
  nlohmann::json j{{"kind", kind_name(n.kind)},
                   {"dims", n.dims},
                   {"axis", n.axis},
                   {"slab", {n.rank_lo, n.rank_hi}},
                   {"points", n.points},
                   {"ranges", n.ranges},
                   {"inside", n.inside},
                   {"three_sided", n.three_sided},
                   {"crossing", n.crossing},
                   {"empty", n.empty},
                   {"m0", n.m0},
                   {"attributed", n.attributed}};
  if (n.kind == SlabNodeKind::box) {
    j["vertices"] = n.vertices;
    j["child_vertices"] = n.child_vertices;
    j["vertices_ok"] = n.vertices_ok;
  }
  if (n.ledger_term > 0) j["ledger_term"] = n.ledger_term;
  if (!n.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const SlabNode& c : n.children) j["children"].push_back(node_json(c));
  }
  if (!n.projections.empty()) {
    j["projections"] = nlohmann::json::array();
    for (const SlabNode& c : n.projections) j["projections"].push_back(node_json(c));
  }
  return j;
}

void node_csv(const SlabNode& n, long parent, std::size_t depth, const char* role, long& next_id,
              std::ostringstream& out) {
  const long id = next_id++;
  out << id << ',' << parent << ',' << depth << ',' << role << ',' << kind_name(n.kind) << ',' << n.dims << ','
      << n.axis << ',' << n.rank_lo << ',' << n.rank_hi << ',' << n.points << ',' << n.ranges << ',' << n.inside
      << ',' << n.three_sided << ',' << n.crossing << ',' << n.empty << ',' << n.m0 << ',' << n.attributed << ','
      << n.vertices << ',' << n.child_vertices << ',' << (n.vertices_ok ? 1 : 0) << ',' << n.ledger_term << '\n';
  for (const SlabNode& c : n.children) node_csv(c, id, depth + 1, "child", next_id, out);
  for (const SlabNode& c : n.projections) node_csv(c, id, depth + 1, "projection", next_id, out);
}

}  // namespace

std::string RecursionReport::to_json(int indent) const {
  nlohmann::json j{{"b", b},
                   {"k", k},
                   {"total", total},
                   {"nodes", nodes},
                   {"fitted_constant", fitted_constant},
                   {"vertices_ok", vertices_ok},
                   {"root", node_json(root)}};
  if (oracle) j["oracle"] = *oracle;
  return j.dump(indent);
}

std::string RecursionReport::csv_header() {
  return "id,parent,depth,role,kind,dims,axis,rank_lo,rank_hi,points,ranges,inside,three_sided,crossing,empty,m0,"
         "attributed,vertices,child_vertices,vertices_ok,ledger_term";
}

std::string RecursionReport::to_csv() const {
  std::ostringstream out;
  out << csv_header() << '\n';
  long next_id = 0;
  node_csv(root, -1, 0, "root", next_id, out);
  return out.str();
}

void summarize(RecursionReport& report) {
  report.total = 0;
  report.nodes = 0;
  report.fitted_constant = 0;
  report.vertices_ok = true;
  summarize(report.root, report);
}

RecursionReport rect_audit(const std::vector<Point>& points, const std::vector<Box>& rects,
                           const AuditOptions& options) {
  if (options.b < 2) throw InvalidInput("branching factor b must be at least 2");
  const std::size_t d = check_dimension(points, rects);
  if (d != 2 && !(points.empty() && rects.empty())) throw InvalidInput("rect_audit expects 2D points and rectangles");
  return run(points, rects, options, 2);
}

RecursionReport box_audit(const std::vector<Point>& points, const std::vector<Box>& boxes,
                          const AuditOptions& options) {
  if (options.b < 2) throw InvalidInput("branching factor b must be at least 2");
  const std::size_t d = check_dimension(points, boxes);
  if (d < 2) throw InvalidInput("box_audit requires d >= 2");
  return run(points, boxes, options, d);
}

}  // namespace incidence
