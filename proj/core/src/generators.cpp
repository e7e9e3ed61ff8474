#include "incidence/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "incidence/extremal.hpp"
#include "incidence/quadtree.hpp"

namespace incidence {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidInput("empty range in Rng::uniform");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return lo + static_cast<std::int64_t>(next() % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }
}

Rational small_rational(Rng& rng, std::int64_t num, std::int64_t den) {
  return ratio(rng.uniform(-num, num), rng.uniform(1, den));
}

void stamp(Instance& inst, const std::string& generator, std::uint64_t seed) {
  inst.provenance["generator"] = generator;
  inst.provenance["seed"] = std::to_string(seed);
  inst.provenance["n"] = std::to_string(inst.points.size());
  inst.provenance["m"] = std::to_string(inst.ranges.size());
}

Point grid_point(Rng& rng, unsigned d, std::int64_t grid) {
  std::vector<Rational> c(d);
  for (auto& x : c) x = rng.uniform(0, grid - 1);
  return Point(std::move(c));
}

}  // namespace

Instance random_boxes(std::size_t n, std::size_t m, unsigned d, std::uint64_t seed, std::int64_t grid) {
  if (d < 1 || grid < 2) throw InvalidInput("random_boxes needs d >= 1 and grid >= 2");
  Rng rng(seed);
  Instance inst;
  inst.dimension = d;
  for (std::size_t i = 0; i < n; ++i) inst.points.push_back(grid_point(rng, d, grid));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Bound> lo(d), hi(d);
    for (unsigned a = 0; a < d; ++a) {
      const std::int64_t x = rng.uniform(-1, grid);
      const std::int64_t y = x + rng.uniform(0, std::max<std::int64_t>(1, grid / 2));
      if (!rng.chance(0.1)) lo[a] = Rational(x);
      if (!rng.chance(0.1)) hi[a] = Rational(y);
    }
    inst.ranges.emplace_back(make_box(std::move(lo), std::move(hi)));
  }
  stamp(inst, "random-boxes", seed);
  inst.provenance["d"] = std::to_string(d);
  return inst;
}

Instance random_halfspaces(std::size_t n, std::size_t m, unsigned d, std::uint64_t seed, std::int64_t grid) {
  if (d < 2) throw InvalidInput("random_halfspaces needs d >= 2");
  Rng rng(seed);
  Instance inst;
  inst.dimension = d;
  for (std::size_t i = 0; i < n; ++i) inst.points.push_back(grid_point(rng, d, grid));
  for (std::size_t j = 0; j < m; ++j) {
    Hyperplane h;
    for (unsigned a = 0; a + 1 < d; ++a) h.slopes.push_back(small_rational(rng, 4, 3));
    h.offset = rng.uniform(-grid, 2 * grid);
    inst.ranges.emplace_back(rng.chance(0.5) ? upper_halfspace(std::move(h)) : lower_halfspace(std::move(h)));
  }
  stamp(inst, "random-halfspaces", seed);
  inst.provenance["d"] = std::to_string(d);
  return inst;
}

Instance random_curtains(std::size_t n, std::size_t m, std::uint64_t seed, std::int64_t grid) {
  Rng rng(seed);
  Instance inst;
  inst.dimension = 2;
  for (std::size_t i = 0; i < n; ++i) inst.points.push_back(grid_point(rng, 2, grid));
  for (std::size_t j = 0; j < m; ++j) {
    Curtain c;
    c.a = small_rational(rng, 8, 4);
    c.b = rng.uniform(-grid, 2 * grid);
    std::int64_t lo = rng.uniform(-1, grid), hi = rng.uniform(-1, grid);
    if (lo > hi) std::swap(lo, hi);
    if (!rng.chance(0.15)) c.lo = Rational(lo);
    if (!rng.chance(0.15)) c.hi = Rational(hi);
    inst.ranges.emplace_back(std::move(c));
  }
  stamp(inst, "random-curtains", seed);
  return inst;
}

std::vector<Triangle> random_fat_triangles(std::size_t m, std::uint64_t seed, double delta, std::int64_t extent) {
  if (!(delta > 0) || delta > std::numbers::pi / 3) throw InvalidInput("fatness angle must lie in (0, pi/3]");
  Rng rng(seed);
  const double margin = std::min(0.02, std::numbers::pi / 3 - delta);
  const double d = delta + margin;
  const double E = static_cast<double>(extent);
  std::vector<Triangle> out;
  while (out.size() < m) {
    const double cx = (rng.unit() * 1.2 - 0.1) * E;
    const double cy = (rng.unit() * 1.2 - 0.1) * E;
    const double radius = 0.5 * E * std::exp2(-12.0 * rng.unit());
    // Inscribed angles are half the opposite arcs, so arcs >= 2d give angles >= d.
    double u = rng.unit(), v = rng.unit();
    if (u > v) std::swap(u, v);
    const double spare = 2 * std::numbers::pi - 6 * d;
    const double arcs[3] = {2 * d + spare * u, 2 * d + spare * (v - u), 2 * d + spare * (1 - v)};
    double phi = 2 * std::numbers::pi * rng.unit();
    Triangle t;
    for (int i = 0; i < 3; ++i) {
      const double x = cx + radius * std::cos(phi), y = cy + radius * std::sin(phi);
      t.v[i] = Point{ratio(std::lround(x * 256), 256), ratio(std::lround(y * 256), 256)};
      phi += arcs[i];
    }
    if (orient(t.v[0], t.v[1], t.v[2]) == 0 || min_angle(t) < delta) continue;
    out.push_back(std::move(t));
  }
  return out;
}

Instance random_fat(std::size_t n, std::size_t m, std::uint64_t seed, double delta) {
  const std::int64_t extent = std::int64_t{1} << 16;
  Rng rng(seed);
  Instance inst;
  inst.dimension = 2;
  for (std::size_t i = 0; i < n; ++i) inst.points.push_back(grid_point(rng, 2, extent));
  for (Triangle& t : random_fat_triangles(m, rng.next(), delta, extent)) inst.ranges.emplace_back(std::move(t));
  stamp(inst, "random-fat", seed);
  return inst;
}

Instance kkk_free_intervals(std::size_t n, std::size_t m, unsigned k, std::uint64_t seed) {
  if (k < 1) throw InvalidInput("k must be positive");
  Rng rng(seed);
  Instance inst;
  inst.dimension = 1;
  inst.k = k;
  std::vector<std::int64_t> xs(4 * n + 4);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<std::int64_t>(i);
  shuffle(xs, rng);
  xs.resize(n);
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i < n; ++i) inst.points.push_back(Point{Rational(xs[i])});

  // cover[w]: accepted intervals containing the window of ranks w .. w+k-1.
  const std::size_t windows = n >= k ? n - k + 1 : 0;
  std::vector<unsigned> cover(windows, 0);
  for (std::size_t c = 0; c < m && n > 0; ++c) {
    const std::size_t a = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const std::size_t len = 1 + static_cast<std::size_t>(std::pow(static_cast<double>(n), rng.unit()));
    const std::size_t b = std::min(n - 1, a + len - 1);
    bool ok = true;
    if (b + 1 >= a + k) {
      for (std::size_t w = a; w + k <= b + 1; ++w) ok = ok && cover[w] + 1 < k;
    }
    if (!ok) continue;
    if (b + 1 >= a + k) {
      for (std::size_t w = a; w + k <= b + 1; ++w) ++cover[w];
    }
    // Endpoints either on the extreme points or half a unit outside them.
    const Rational lo = rng.chance(0.5) ? Rational(xs[a]) : Rational(2 * xs[a] - 1, 2);
    const Rational hi = rng.chance(0.5) ? Rational(xs[b]) : Rational(2 * xs[b] + 1, 2);
    inst.ranges.emplace_back(make_interval(lo, hi));
  }
  stamp(inst, "kkk-free-intervals", seed);
  inst.provenance["k"] = std::to_string(k);
  return inst;
}

Instance k22_free_halfplanes(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("k22_free_halfplanes needs n >= 2");
  Rng rng(seed);
  Instance inst;
  inst.dimension = 2;
  inst.k = 2;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::int64_t x = static_cast<std::int64_t>(i);
    inst.points.push_back(Point{Rational(x), Rational(-x * x)});
  }
  // Chord through (i, -i^2) and (j, -j^2): y = -(i+j) x + i j. Its upper
  // halfplane holds exactly the points with i <= x <= j.
  std::vector<Range> ranges;
  std::int64_t cur = 1;
  const std::int64_t last = static_cast<std::int64_t>(n);
  while (cur < last && ranges.size() < m / 4) {
    const std::int64_t len = 1 + static_cast<std::int64_t>(std::pow(static_cast<double>(n) / 4, rng.unit()));
    const std::int64_t next = std::min(last, cur + len);
    if (rng.chance(0.5)) {
      ranges.emplace_back(upper_halfspace(Hyperplane{{Rational(-(cur + next))}, Rational(cur * next)}));
    }
    cur = next;
  }
  // Through (i, -i^2) with slope -2i + t, |t| < 1: holds only that point.
  while (ranges.size() < m) {
    // Log-uniform choice of point: point i is picked with weight about 1/i.
    const std::int64_t ii =
        std::clamp<std::int64_t>(static_cast<std::int64_t>(std::pow(static_cast<double>(n), rng.unit())), 1, last);
    const Rational t(rng.uniform(-999, 999), 1000);
    ranges.emplace_back(upper_halfspace(Hyperplane{{Rational(-2 * ii + t)}, Rational(ii * ii - t * ii)}));
  }
  shuffle(ranges, rng);
  inst.ranges = std::move(ranges);
  stamp(inst, "k22-free-halfplanes", seed);
  return inst;
}

Instance elekes_instance(unsigned N) {
  const PointLineInstance g = elekes_grid(N);
  Instance inst;
  inst.dimension = 2;
  inst.points = g.points;
  for (const Line& l : g.lines) inst.ranges.emplace_back(l);
  inst.provenance["generator"] = "elekes";
  inst.provenance["N"] = std::to_string(N);
  return inst;
}

Instance lower5d_instance(unsigned N) {
  ReductionResult r = lower_bound_5d(N);
  Instance inst;
  inst.dimension = 5;
  inst.points = std::move(r.parts.front().points);
  inst.ranges = std::move(r.parts.front().ranges);
  inst.provenance["generator"] = "lower5d";
  inst.provenance["N"] = std::to_string(N);
  return inst;
}

}  // namespace incidence
