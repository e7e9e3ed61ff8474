#include "incidence/levels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace incidence {

std::uint64_t level(const Point& p, const std::vector<Hyperplane>& hs) {
  std::uint64_t count = 0;
  for (const Hyperplane& h : hs) {
    if (above(p, h)) ++count;
  }
  return count;
}

std::uint64_t depth(const Point& p, const std::vector<Range>& shapes) {
  std::uint64_t count = 0;
  for (const Range& s : shapes) {
    if (contains(s, p)) ++count;
  }
  return count;
}

std::vector<std::uint64_t> levels(const std::vector<Point>& points, const std::vector<Hyperplane>& hs) {
  std::vector<std::uint64_t> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(level(p, hs));
  return out;
}

LevelProfile level_partition(std::vector<std::uint64_t> values, std::uint64_t m, std::uint64_t r) {
  if (r < 1 || r > m) throw InvalidInput("level_partition requires 1 <= r <= m");
  LevelProfile prof;
  prof.values = std::move(values);
  prof.class_of.resize(prof.values.size());
  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    // value < 2^c m / r  <=>  value * r < 2^c m, in exact integers.
    const Integer scaled = Integer(static_cast<unsigned long>(prof.values[i])) * static_cast<unsigned long>(r);
    std::size_t c = 0;
    Integer limit = Integer(static_cast<unsigned long>(m));
    while (scaled >= limit) {
      ++c;
      limit *= 2;
    }
    prof.class_of[i] = c;
    if (prof.classes.size() <= c) prof.classes.resize(c + 1);
    prof.classes[c].push_back(static_cast<Index>(i));
  }
  return prof;
}

LevelProfile level_partition(const std::vector<Point>& points, const std::vector<Hyperplane>& hs, std::uint64_t r) {
  return level_partition(levels(points, hs), hs.size(), r);
}

std::string CensusRow::csv_header() { return "r,observed,observed_closed,reference,ratio"; }

std::string CensusRow::to_csv() const {
  std::ostringstream out;
  out.precision(10);
  out << r << ',' << observed << ',' << observed_closed << ',' << reference << ',' << ratio;
  return out.str();
}

CensusRow census_row(const std::vector<std::uint64_t>& values, std::uint64_t m, unsigned k, std::uint64_t r,
                     double reference) {
  if (r < 1) throw InvalidInput("census requires r >= 1");
  if (2 * std::uint64_t{k} * r > m) throw InvalidInput("census requires r <= m / (2k)");
  CensusRow row;
  row.r = r;
  for (std::uint64_t v : values) {
    // m/r <= v  and  v < 2m/r (resp. <=), compared as v r against m.
    const unsigned __int128 vr = static_cast<unsigned __int128>(v) * r;
    if (vr < m) continue;
    if (vr < 2 * static_cast<unsigned __int128>(m)) ++row.observed;
    if (vr <= 2 * static_cast<unsigned __int128>(m)) ++row.observed_closed;
  }
  row.reference = reference;
  row.ratio = reference > 0 ? static_cast<double>(row.observed) / reference : 0.0;
  return row;
}

namespace {

std::vector<std::uint64_t> degrees_checked(const std::vector<Point>& points, const IncidenceGraph& g, unsigned k,
                                           std::uint64_t node_budget) {
  require_kkk_free(g, k, node_budget);
  std::vector<std::uint64_t> deg(points.size(), 0);
  for (const Edge& e : g.edges) ++deg[e.first];
  return deg;
}

std::size_t common_dimension(const std::vector<Halfspace>& upper) {
  std::size_t d = 0;
  for (const Halfspace& h : upper) {
    if (h.kind != HalfspaceKind::upper) throw InvalidInput("shallow census expects upper halfspaces");
    if (d != 0 && h.dim() != d) throw InvalidInput("halfspaces of mixed dimension");
    d = h.dim();
  }
  return d;
}

}  // namespace

std::vector<CensusRow> shallow_census_sweep(const std::vector<Point>& points, const std::vector<Halfspace>& upper,
                                            unsigned k, const std::vector<std::uint64_t>& rs,
                                            std::uint64_t node_budget) {
  const std::size_t d = common_dimension(upper);
  // For an upper halfspace, containment of p is exactly "plane on or below p",
  // so the level of p equals its degree in G(P, B).
  const auto values = degrees_checked(points, incidences_bruteforce(points, upper), k, node_budget);
  std::vector<CensusRow> rows;
  for (std::uint64_t r : rs) {
    const double reference = k * std::pow(static_cast<double>(r), static_cast<double>(d / 2));
    rows.push_back(census_row(values, upper.size(), k, r, reference));
  }
  return rows;
}

CensusRow shallow_census(const std::vector<Point>& points, const std::vector<Halfspace>& upper, unsigned k,
                         std::uint64_t r, std::uint64_t node_budget) {
  return shallow_census_sweep(points, upper, k, {r}, node_budget).front();
}

unsigned log_star(double x) {
  unsigned n = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++n;
  }
  return n;
}

double union_complexity(UnionFamily family, double r) {
  switch (family) {
    case UnionFamily::pseudo_disks:
      return r;
    case UnionFamily::fat_triangles:
      return r * std::max(1u, log_star(r));
  }
  return r;
}

std::vector<CensusRow> depth_census_sweep(const std::vector<Point>& points, const std::vector<Range>& shapes,
                                          unsigned k, const std::vector<std::uint64_t>& rs, const ComplexityFn& f0,
                                          std::uint64_t node_budget) {
  const auto values = degrees_checked(points, incidences_bruteforce(points, shapes), k, node_budget);
  std::vector<CensusRow> rows;
  for (std::uint64_t r : rs) rows.push_back(census_row(values, shapes.size(), k, r, k * f0(static_cast<double>(r))));
  return rows;
}

CensusRow depth_census(const std::vector<Point>& points, const std::vector<Range>& shapes, unsigned k,
                       std::uint64_t r, const ComplexityFn& f0, std::uint64_t node_budget) {
  return depth_census_sweep(points, shapes, k, {r}, f0, node_budget).front();
}

std::vector<std::uint64_t> doubling_sweep(std::uint64_t m, unsigned k) {
  std::vector<std::uint64_t> rs;
  for (std::uint64_t r = 1; 2 * std::uint64_t{k} * r <= m; r *= 2) rs.push_back(r);
  return rs;
}

namespace {

constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;

std::uint64_t saturating_ceil(double v) {
  if (!(v < static_cast<double>(kSaturate))) return kSaturate;
  return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

CensusSchedule census_schedule(unsigned k, std::uint64_t m, ScheduleMode mode, unsigned c) {
  if (k < 1) throw InvalidInput("census schedule requires k >= 1");
  if (c < 2) throw InvalidInput("census schedule requires c >= 2");
  if (m < 2 * std::uint64_t{k}) throw InvalidInput("census schedule requires m >= 2k");

  CensusSchedule s;
  s.mode = mode;
  const double lk = std::log2(static_cast<double>(k));
  std::size_t doubling_until = 0;
  if (mode == ScheduleMode::general) {
    doubling_until = static_cast<std::size_t>(std::floor(c * lk));
  } else {
    const double inner = k >= 2 ? std::log2(lk) : 0.0;
    doubling_until = static_cast<std::size_t>(std::max(1.0, std::ceil(3.0 * std::max(0.0, inner))));
  }

  std::uint64_t t = 2 * std::uint64_t{k};
  s.thresholds.push_back(t);
  while (t < m) {
    const std::size_t i = s.thresholds.size();
    std::uint64_t next;
    if (i <= doubling_until) {
      next = 2 * t;
      ++s.doubling_steps;
    } else if (mode == ScheduleMode::general) {
      const double e = static_cast<double>(c) / static_cast<double>(c - 1);
      next = saturating_ceil(std::pow(static_cast<double>(t), e));
    } else {
      // For small k the tower step can stall below 2 t; doubling keeps the
      // thresholds strictly increasing without slowing the growth.
      next = saturating_ceil(std::exp2(std::sqrt(static_cast<double>(t) / k)));
    }
    next = std::min(std::max(next, 2 * t), kSaturate);
    if (next <= t) throw IntegrityError("census schedule failed to increase");
    t = next;
    s.thresholds.push_back(t);
  }
  return s;
}

}  // namespace incidence
