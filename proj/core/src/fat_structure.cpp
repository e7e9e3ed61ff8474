#include "incidence/fat_structure.hpp"

#include <algorithm>
#include <sstream>

#include "incidence/reductions.hpp"

namespace incidence {

namespace {

using Polygon = std::vector<Point>;

// Keeps the part of a convex polygon with coordinate `axis` >= value (keep_ge)
// or <= value.
Polygon clip(const Polygon& poly, int axis, const Rational& value, bool keep_ge) {
  Polygon out;
  const std::size_t n = poly.size();
  auto inside = [&](const Point& p) { return keep_ge ? p[axis] >= value : p[axis] <= value; };
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    const bool ia = inside(a), ib = inside(b);
    if (ia) out.push_back(a);
    if (ia != ib) {
      const Rational t = (value - a[axis]) / (b[axis] - a[axis]);
      Point c{Rational(a[0] + t * (b[0] - a[0])), Rational(a[1] + t * (b[1] - a[1]))};
      c[axis] = value;
      out.push_back(std::move(c));
    }
  }
  return out;
}

Integer ceil_of(const Rational& v) { return -floor_of(Rational(-v)); }

std::int64_t clamp_index(const Integer& v, std::int64_t lo, std::int64_t hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v.get_si();
}

std::int64_t round_up(std::int64_t v, std::int64_t step) {
  std::int64_t r = v % step;
  if (r < 0) r += step;
  return r == 0 ? v : v + (step - r);
}

}  // namespace

SquareRelation classify(const Triangle& t, const QuadtreeSquare& s) {
  if (s.contains(t.v[0]) && s.contains(t.v[1]) && s.contains(t.v[2])) return SquareRelation::inside;
  const Rational x0 = s.x0(), y0 = s.y0();
  const Rational x1 = x0 + s.side(), y1 = y0 + s.side();
  Polygon poly(t.v.begin(), t.v.end());
  poly = clip(poly, 0, x0, true);
  if (!poly.empty()) poly = clip(poly, 0, x1, false);
  if (!poly.empty()) poly = clip(poly, 1, y0, true);
  if (!poly.empty()) poly = clip(poly, 1, y1, false);
  if (poly.empty()) return SquareRelation::disjoint;
  // The closed square is met; the half-open one is missed only when the
  // (convex) intersection lies on the excluded right or top edge.
  const bool on_right = std::all_of(poly.begin(), poly.end(), [&](const Point& p) { return p[0] == x1; });
  const bool on_top = std::all_of(poly.begin(), poly.end(), [&](const Point& p) { return p[1] == y1; });
  return on_right || on_top ? SquareRelation::disjoint : SquareRelation::crossing;
}

FatReportStructure::FatReportStructure(std::vector<Point> points, FatOptions options)
    : points_(std::move(points)), options_(options) {
  q_ = stabbing_resolution(options_.delta);
  if (options_.leaf_size < 1) throw InvalidInput("leaf_size must be positive");

  Rational minx, maxx, miny, maxy;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.dim() != 2) throw InvalidInput("fat triangle structure expects 2D points");
    if (i == 0 || p[0] < minx) minx = p[0];
    if (i == 0 || p[0] > maxx) maxx = p[0];
    if (i == 0 || p[1] < miny) miny = p[1];
    if (i == 0 || p[1] > maxy) maxy = p[1];
  }
  Rational w = std::max(Rational(maxx - minx), Rational(maxy - miny));
  if (w == 0) w = 1;
  // Bounding square grown by 10%: points land in [1/22, 21/22].
  scale_ = w * Rational(11, 10);
  origin_x_ = minx - w / 20;
  origin_y_ = miny - w / 20;

  std::vector<Point> unit;
  unit.reserve(points_.size());
  for (const Point& p : points_) unit.push_back(normalize(p));

  std::vector<Index> all(points_.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;

  strata_.resize(4);
  stratum_stats_.resize(3);
  for (int s = 0; s < 3; ++s) {
    strata_[s].frame = shifted(unit, s);
    stratum_stats_[s].stratum = s;
    build(strata_[s], stratum_stats_[s], all, 1);
  }
  // Fallback for queries that no shift aligns: a single node covering the
  // unit square, answered through stabbing points like any crossing node.
  strata_[3].frame = std::move(unit);
  Node root;
  root.square = QuadtreeSquare{0, 0, 0};
  root.points = all;
  root.leaf = all.size() <= options_.leaf_size;
  strata_[3].nodes.push_back(std::move(root));
}

Point FatReportStructure::normalize(const Point& p) const {
  return Point{Rational((p[0] - origin_x_) / scale_), Rational((p[1] - origin_y_) / scale_)};
}

int FatReportStructure::build(Stratum& st, FatStratumStats& stats, std::vector<Index> ids, std::size_t depth) {
  const int id = static_cast<int>(st.nodes.size());
  st.nodes.emplace_back();
  ++stats.nodes;
  stats.depth = std::max(stats.depth, depth);
  stats.stored_entries += ids.size();

  bool leaf = ids.size() <= options_.leaf_size;
  CentroidResult c;
  if (!leaf) {
    std::vector<Point> local;
    local.reserve(ids.size());
    for (Index i : ids) local.push_back(st.frame[i]);
    c = centroid_square(local, options_.max_level);
    if (c.capped) {
      leaf = true;
      ++stats.capped_leaves;
    }
  }
  if (leaf) {
    ++stats.leaves;
    st.nodes[id].points = std::move(ids);
    return id;
  }

  std::vector<Index> in, out;
  for (Index i : ids) (c.square.contains(st.frame[i]) ? in : out).push_back(i);
  if (in.empty() || out.empty()) throw IntegrityError("centroid square does not split the node");
  const int inside = build(st, stats, std::move(in), depth + 1);
  const int outside = build(st, stats, std::move(out), depth + 1);
  Node& nd = st.nodes[id];
  nd.square = c.square;
  nd.points = std::move(ids);
  nd.inside = inside;
  nd.outside = outside;
  nd.leaf = false;
  return id;
}

std::vector<Index> FatReportStructure::query(const Triangle& t, FatQueryStats* stats) const {
  FatQueryStats local;
  FatQueryStats& st = stats ? *stats : local;
  for (const Point& v : t.v) {
    if (v.dim() != 2) throw InvalidInput("fat query expects a planar triangle");
  }
  if (orient(t.v[0], t.v[1], t.v[2]) == 0) throw InvalidInput("degenerate query triangle");
  const double angle = min_angle(t);
  if (angle < options_.delta * (1 - 1e-9)) {
    std::ostringstream msg;
    msg << "query triangle is not fat: smallest angle " << angle << " rad is below " << options_.delta;
    throw InvalidInput(msg.str());
  }

  Triangle unit{{normalize(t.v[0]), normalize(t.v[1]), normalize(t.v[2])}};
  std::vector<Index> out;
  if (classify(unit, QuadtreeSquare{0, 0, 0}) == SquareRelation::disjoint) return out;

  const std::vector<Point> verts(unit.v.begin(), unit.v.end());
  if (auto shift = find_shift(verts)) {
    st.stratum = *shift;
    const std::vector<Point> moved = shifted(verts, *shift);
    walk(*shift, Triangle{{moved[0], moved[1], moved[2]}}, out, st);
  } else {
    st.stratum = -1;
    ++st.tree_nodes;
    answer_crossing(3, 0, unit, out, st);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  st.reported += out.size();
  return out;
}

void FatReportStructure::walk(int stratum, const Triangle& t, std::vector<Index>& out, FatQueryStats& st) const {
  const Stratum& S = strata_[stratum];
  int node = 0;
  while (true) {
    ++st.tree_nodes;
    const Node& nd = S.nodes[node];
    if (nd.leaf) {
      for (Index i : nd.points) {
        ++st.leaf_tests;
        if (contains(t, S.frame[i])) out.push_back(i);
      }
      return;
    }
    switch (classify(t, nd.square)) {
      case SquareRelation::inside:
        node = nd.inside;
        break;
      case SquareRelation::disjoint:
        node = nd.outside;
        break;
      case SquareRelation::crossing:
        answer_crossing(stratum, node, t, out, st);
        return;
    }
  }
}

void FatReportStructure::answer_crossing(int stratum, int node, const Triangle& t, std::vector<Index>& out,
                                         FatQueryStats& st) const {
  const Stratum& S = strata_[stratum];
  const Node& nd = S.nodes[node];
  auto brute = [&] {
    for (Index i : nd.points) {
      ++st.leaf_tests;
      if (contains(t, S.frame[i])) out.push_back(i);
    }
  };
  if (nd.leaf) {
    brute();
    return;
  }

  // Search the stabbing grid inside the triangle's bounding box, coarse
  // spacings first so that large triangles share a few cached structures.
  const Rational x0 = nd.square.x0(), y0 = nd.square.y0();
  const Rational h = nd.square.side() / Rational(static_cast<unsigned long>(q_));
  const std::int64_t lo = -static_cast<std::int64_t>(q_ / 4);
  const std::int64_t hi = static_cast<std::int64_t>(q_ + q_ / 4);
  Rational minx = t.v[0][0], maxx = minx, miny = t.v[0][1], maxy = miny;
  for (const Point& v : t.v) {
    minx = std::min(minx, v[0]);
    maxx = std::max(maxx, v[0]);
    miny = std::min(miny, v[1]);
    maxy = std::max(maxy, v[1]);
  }
  const std::int64_t ax = clamp_index(ceil_of((minx - x0) / h), lo, hi + 1);
  const std::int64_t bx = clamp_index(floor_of((maxx - x0) / h), lo - 1, hi);
  const std::int64_t ay = clamp_index(ceil_of((miny - y0) / h), lo, hi + 1);
  const std::int64_t by = clamp_index(floor_of((maxy - y0) / h), lo - 1, hi);

  std::optional<std::pair<std::int64_t, std::int64_t>> found;
  Point stabber;
  for (std::int64_t step = static_cast<std::int64_t>(q_); step >= 1 && !found; step /= 2) {
    for (std::int64_t my = round_up(ay, step); my <= by && !found; my += step) {
      for (std::int64_t mx = round_up(ax, step); mx <= bx; mx += step) {
        const bool seen = step < static_cast<std::int64_t>(q_) && mx % (2 * step) == 0 && my % (2 * step) == 0;
        if (seen) continue;
        ++st.stabber_tests;
        Point g{Rational(x0 + Rational(mx) * h), Rational(y0 + Rational(my) * h)};
        if (contains(t, g)) {
          found = std::make_pair(mx, my);
          stabber = std::move(g);
          break;
        }
      }
    }
  }
  if (!found) {
    // Guaranteed not to happen for aligned fat triangles; fall back loudly.
    if (stratum < 3) integrity_events_.fetch_add(1);
    st.brute_force = true;
    brute();
    return;
  }

  const auto p = pack(stratum, node, found->first, found->second, stabber);
  const std::vector<OriginPiece> pieces = origin_pieces(t, stabber);
  for (SignCell cell : {SignCell::right, SignCell::left}) {
    const CurtainStructure* cs = cell == SignCell::right ? p->right.get() : p->left.get();
    const std::vector<Index>& ids = cell == SignCell::right ? p->right_ids : p->left_ids;
    if (!cs) continue;
    for (const OriginPiece& piece : pieces) {
      const auto curtain = piece_curtain(piece, cell);
      if (!curtain) continue;
      CurtainQueryStats cst;
      for (Index local : cs->query(*curtain, &cst)) out.push_back(ids[local]);
      st.curtain_visits += cst.visits;
      st.leaf_tests += cst.tested;
    }
  }
  for (Index i : p->axis_ids) {
    ++st.leaf_tests;
    if (contains(t, S.frame[i])) out.push_back(i);
  }
}

std::shared_ptr<const FatReportStructure::Pack> FatReportStructure::pack(int stratum, int node, std::int64_t mx,
                                                                         std::int64_t my, const Point& stabber) const {
  const PackKey key{stratum, node, mx, my};
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const Stratum& S = strata_[stratum];
  auto p = std::make_shared<Pack>();
  std::vector<Point> right, left;
  for (Index i : S.nodes[node].points) {
    const Point rel{Rational(S.frame[i][0] - stabber[0]), Rational(S.frame[i][1] - stabber[1])};
    if (rel[0] > 0) {
      right.push_back(to_curtain_space(rel, SignCell::right));
      p->right_ids.push_back(i);
    } else if (rel[0] < 0) {
      left.push_back(to_curtain_space(rel, SignCell::left));
      p->left_ids.push_back(i);
    } else {
      p->axis_ids.push_back(i);
    }
  }
  if (!right.empty()) p->right = std::make_unique<CurtainStructure>(std::move(right), options_.curtain_leaf);
  if (!left.empty()) p->left = std::make_unique<CurtainStructure>(std::move(left), options_.curtain_leaf);
  p->entries = (p->right ? p->right->entries() : 0) + (p->left ? p->left->entries() : 0) + p->axis_ids.size();

  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = cache_.emplace(key, std::move(p));
  return it->second;
}

std::uint64_t FatReportStructure::stored_entries() const {
  std::uint64_t total = strata_[3].nodes.front().points.size();
  for (const FatStratumStats& s : stratum_stats_) total += s.stored_entries;
  return total;
}

std::uint64_t FatReportStructure::curtain_entries() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  std::uint64_t total = 0;
  for (const auto& [key, p] : cache_) total += p->entries;
  return total;
}

std::size_t FatReportStructure::curtain_structures() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.size();
}

std::size_t FatReportStructure::depth() const {
  std::size_t d = 0;
  for (const FatStratumStats& s : stratum_stats_) d = std::max(d, s.depth);
  return d;
}

std::vector<FatSplit> FatReportStructure::splits() const {
  std::vector<FatSplit> out;
  for (int s = 0; s < 3; ++s) {
    for (const Node& nd : strata_[s].nodes) {
      if (nd.leaf) continue;
      out.push_back(FatSplit{nd.points.size(), strata_[s].nodes[nd.inside].points.size(),
                             strata_[s].nodes[nd.outside].points.size()});
    }
  }
  return out;
}

std::string FatReportStructure::stats_csv_header() { return "stratum,nodes,leaves,capped_leaves,depth,stored_entries"; }

std::string FatReportStructure::stats_csv() const {
  std::ostringstream os;
  os << stats_csv_header() << '\n';
  for (const FatStratumStats& s : stratum_stats_) {
    os << s.stratum << ',' << s.nodes << ',' << s.leaves << ',' << s.capped_leaves << ',' << s.depth << ','
       << s.stored_entries << '\n';
  }
  return os.str();
}

}  // namespace incidence
