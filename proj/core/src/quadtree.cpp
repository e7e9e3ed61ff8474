#include "incidence/quadtree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace incidence {

namespace {

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw InvalidInput("quadtree index out of range");
  return z.get_si();
}

// floor(x * 2^level) with shifts and one floor division, skipping the gcd
// that a rational product would pay for.
std::int64_t cell_index(const Rational& x, int level) {
  Integer num = x.get_num(), den = x.get_den();
  if (level >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(level));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-level));
  }
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return to_int64(q);
}

void require_planar(const std::vector<Point>& shape) {
  if (shape.empty()) throw InvalidInput("empty shape");
  for (const Point& p : shape) {
    if (p.dim() != 2) throw InvalidInput("quadtree shapes are planar");
  }
}

void require_unit(const std::vector<Point>& shape) {
  for (const Point& p : shape) {
    if (p[0] < 0 || p[0] >= 1 || p[1] < 0 || p[1] >= 1) throw InvalidInput("shape outside unit square");
  }
}

}  // namespace

Rational QuadtreeSquare::side() const { return pow2(-level); }
Rational QuadtreeSquare::x0() const { return Rational(i) * pow2(-level); }
Rational QuadtreeSquare::y0() const { return Rational(j) * pow2(-level); }

bool QuadtreeSquare::contains(const Point& p) const {
  return cell_index(p[0], level) == i && cell_index(p[1], level) == j;
}

QuadtreeSquare QuadtreeSquare::child(int qx, int qy) const {
  return QuadtreeSquare{level + 1, 2 * i + qx, 2 * j + qy};
}

QuadtreeSquare square_at(const Point& p, int level) {
  return QuadtreeSquare{level, cell_index(p[0], level), cell_index(p[1], level)};
}

Rational diameter2(const std::vector<Point>& shape) {
  Rational best = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    for (std::size_t b = a + 1; b < shape.size(); ++b) best = std::max(best, squared_distance(shape[a], shape[b]));
  }
  return best;
}

int alignment_level(const Rational& diam2) {
  if (diam2 <= 0) throw InvalidInput("alignment needs a positive diameter");
  const Rational target = 16 * diam2;  // side^2 >= (4r)^2
  // side = 2^-l, side^2 = 2^-2l.
  int l = static_cast<int>(std::floor(-std::log2(target.get_d()) / 2));
  while (pow2(-2L * (l + 1)) >= target) ++l;
  while (pow2(-2L * l) < target) --l;
  return l;
}

std::optional<QuadtreeSquare> aligned_square(const std::vector<Point>& shape) {
  require_planar(shape);
  const int l = alignment_level(diameter2(shape));
  const QuadtreeSquare s = square_at(shape.front(), l);
  for (const Point& p : shape) {
    if (!s.contains(p)) return std::nullopt;
  }
  return s;
}

bool is_aligned(const std::vector<Point>& shape) {
  require_planar(shape);
  require_unit(shape);
  return aligned_square(shape).has_value();
}

Rational shift_value(int shift_index) {
  if (shift_index < 0 || shift_index > 2) throw InvalidInput("shift index must be 0, 1 or 2");
  return ratio(shift_index, 3);
}

std::vector<Point> shifted(const std::vector<Point>& shape, int shift_index) {
  const Rational s = shift_value(shift_index);
  std::vector<Point> out;
  out.reserve(shape.size());
  for (const Point& p : shape) out.push_back(Point{Rational(p[0] + s), Rational(p[1] + s)});
  return out;
}

std::optional<int> find_shift(const std::vector<Point>& shape) {
  require_planar(shape);
  if (diameter2(shape) == 0) throw InvalidInput("alignment needs a positive diameter");
  for (int s = 0; s < 3; ++s) {
    if (aligned_square(shifted(shape, s))) return s;
  }
  return std::nullopt;
}

int shift_align(const std::vector<Point>& shape) {
  require_planar(shape);
  require_unit(shape);
  // The three shifted grids put their lines of a given level at distinct
  // offsets spaced side/3 apart, and the extent of the shape on either axis
  // is at most side/4, so each axis rules out at most one shift.
  if (auto s = find_shift(shape)) return *s;
  throw IntegrityError("no shift aligns the shape");
}

CentroidResult centroid_square(const std::vector<Point>& points, int max_level) {
  if (points.empty()) throw InvalidInput("centroid_square needs points");
  require_planar(points);
  const std::size_t n = points.size();
  CentroidResult r;
  r.square = square_at(points.front(), -3);
  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i][0] < 0 || points[i][1] < 0) throw InvalidInput("centroid_square expects nonnegative points");
    if (!r.square.contains(points[i])) throw InvalidInput("points do not share a level -3 square");
    alive[i] = i;
  }
  r.inside = n;
  // A square qualifies when 5 * inside >= n.
  while (true) {
    if (r.square.level >= max_level) {
      r.capped = true;
      return r;
    }
    std::array<std::vector<std::size_t>, 4> quadrant;
    const int next = r.square.level + 1;
    for (std::size_t idx : alive) {
      const int qx = static_cast<int>(cell_index(points[idx][0], next) - 2 * r.square.i);
      const int qy = static_cast<int>(cell_index(points[idx][1], next) - 2 * r.square.j);
      quadrant[2 * qy + qx].push_back(idx);
    }
    int heavy = 0;
    for (int q = 1; q < 4; ++q) {
      if (quadrant[q].size() > quadrant[heavy].size()) heavy = q;
    }
    if (5 * quadrant[heavy].size() < n) return r;
    r.square = r.square.child(heavy % 2, heavy / 2);
    r.inside = quadrant[heavy].size();
    alive = std::move(quadrant[heavy]);
  }
}

std::uint64_t stabbing_resolution(double delta) {
  if (!(delta > 0) || delta > std::numbers::pi / 3 + 1e-12) {
    throw InvalidInput("fatness angle must lie in (0, pi/3]");
  }
  std::uint64_t q = 4;
  while (static_cast<double>(q) * delta < 8.0) q *= 2;
  return q;
}

std::vector<Point> stabbing_points(const QuadtreeSquare& s, double delta) {
  const std::uint64_t q = stabbing_resolution(delta);
  const Rational h = s.side() / Rational(static_cast<unsigned long>(q));
  const std::int64_t count = static_cast<std::int64_t>(3 * q / 2);
  const std::int64_t offset = static_cast<std::int64_t>(q / 4);
  const Rational x0 = s.x0(), y0 = s.y0();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>((count + 1) * (count + 1)));
  for (std::int64_t c = 0; c <= count; ++c) {
    for (std::int64_t a = 0; a <= count; ++a) {
      out.push_back(Point{Rational(x0 + Rational(a - offset) * h), Rational(y0 + Rational(c - offset) * h)});
    }
  }
  return out;
}

double min_angle(const Triangle& t) {
  double best = std::numbers::pi;
  for (int i = 0; i < 3; ++i) {
    const Point& a = t.v[i];
    const Point& b = t.v[(i + 1) % 3];
    const Point& c = t.v[(i + 2) % 3];
    const double ux = Rational(b[0] - a[0]).get_d(), uy = Rational(b[1] - a[1]).get_d();
    const double wx = Rational(c[0] - a[0]).get_d(), wy = Rational(c[1] - a[1]).get_d();
    const double angle = std::atan2(std::abs(ux * wy - uy * wx), ux * wx + uy * wy);
    best = std::min(best, angle);
  }
  return best;
}

}  // namespace incidence
