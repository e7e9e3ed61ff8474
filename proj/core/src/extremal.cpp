#include "incidence/extremal.hpp"

#include <cmath>

#include "incidence/levels.hpp"

namespace incidence {

PointLineInstance elekes_grid(unsigned N) {
  if (N < 1) throw InvalidInput("elekes_grid requires N >= 1");
  PointLineInstance inst;
  const unsigned long n2 = static_cast<unsigned long>(N) * N;
  for (unsigned long x = 1; x <= N; ++x) {
    for (unsigned long y = 1; y <= 2 * n2; ++y) inst.points.push_back(Point{Rational(x), Rational(y)});
  }
  for (unsigned long a = 1; a <= N; ++a) {
    for (unsigned long b = 1; b <= n2; ++b) inst.lines.push_back(Line{Rational(a), Rational(b)});
  }
  return inst;
}

ReductionResult lower_bound_5d(unsigned N) {
  const PointLineInstance inst = elekes_grid(N);
  return pointline_to_5d(inst.points, inst.lines);
}

FavorableVerdict verify_favorable(const std::vector<Point>& points, const std::vector<Box>& boxes,
                                  std::uint64_t threshold) {
  FavorableVerdict v;
  const IncidenceGraph g = incidences_bruteforce(points, boxes);
  v.incidences = g.incidences();
  v.implied_lower_bound = boxes.size() * threshold;
  const auto members = g.points_of_ranges();
  for (Index j = 0; j < members.size(); ++j) {
    if (members[j].size() < threshold) {
      v.size_condition = false;
      v.small_box = j;
      break;
    }
  }
  v.shared_witness = find_kkk(g, 2);
  v.shared_condition = v.shared_witness.verdict == KkkVerdict::none;
  return v;
}

BoundFamily parse_bound_family(const std::string& tag) {
  if (tag == "interval") return BoundFamily::interval;
  if (tag == "box") return BoundFamily::box;
  if (tag == "polyhedra") return BoundFamily::polyhedra;
  if (tag == "halfspace") return BoundFamily::halfspace;
  if (tag == "ball") return BoundFamily::ball;
  if (tag == "union-complexity") return BoundFamily::union_complexity;
  if (tag == "pseudo-disks") return BoundFamily::pseudo_disks;
  if (tag == "fat") return BoundFamily::fat;
  throw InvalidInput("unknown bound family '" + tag + "'");
}

std::string to_string(BoundFamily family) {
  static const char* names[] = {"interval",         "box",          "polyhedra", "halfspace", "ball",
                                "union-complexity", "pseudo-disks", "fat"};
  return names[static_cast<int>(family)];
}

namespace {

double lg(double x) { return std::log2(std::max(x, 1.0)); }

// log n / log log n, evaluated as L / log2(max(L, 4)) with L = max(1, log2 n).
// Below n = 16 the denominator is pinned at 2, which keeps the ratio
// nondecreasing in n.
double log_over_loglog(double n) {
  const double L = std::max(1.0, lg(n));
  return std::max(1.0, L / std::log2(std::max(L, 4.0)));
}

// log log m, substituted by 1 below m = 4.
double loglog(double m) { return m >= 4 ? std::log2(lg(m)) : 1.0; }

double boxlike(double n, double m, double k, double dims, double eps) {
  const double L = std::max(1.0, lg(n));
  return k * n * std::pow(log_over_loglog(n), dims - 1) + k * m * std::pow(L, std::max(0.0, dims - 2 + eps));
}

double shallow(double n, double m, double k, double e) {
  // k^(2/(e+1)) (mn)^(e/(e+1)) + k (n+m)
  return std::pow(k, 2.0 / (e + 1)) * std::pow(m * n, e / (e + 1)) + k * (n + m);
}

}  // namespace

double eval_bound(const BoundFormula& f, double n, double m, double k, double constant) {
  if (n < 1 || m < 0 || k < 1) throw InvalidInput("eval_bound requires n >= 1, m >= 0, k >= 1");
  if (f.family == BoundFamily::interval) return constant * (k * n + 3 * k * m);

  const bool log_based = f.family == BoundFamily::box || f.family == BoundFamily::polyhedra ||
                         f.family == BoundFamily::union_complexity || f.family == BoundFamily::pseudo_disks ||
                         f.family == BoundFamily::fat;
  if (log_based && n <= 1) return k * (1 + m) * constant;

  switch (f.family) {
    case BoundFamily::box:
      return constant * boxlike(n, m, k, f.d, f.eps);
    case BoundFamily::polyhedra:
      return constant * boxlike(n, m, k, f.delta, f.eps);
    case BoundFamily::halfspace:
      if (f.d <= 3) return constant * k * (n + m);
      return constant * shallow(n, m, k, f.d / 2);
    case BoundFamily::ball:
      if (f.d <= 2) return constant * k * (n + m);
      return constant * shallow(n, m, k, (f.d + 1) / 2);
    case BoundFamily::union_complexity: {
      if (!f.f0) throw InvalidInput("union-complexity bound needs F0");
      return constant * (k * n + k * f.f0(m) * (loglog(m) + lg(k)));
    }
    case BoundFamily::pseudo_disks:
      return constant * (k * n + k * m * (loglog(m) + lg(k)));
    case BoundFamily::fat: {
      const double ls = std::max(1u, log_star(m));
      const double llk = std::log2(std::max(1.0, lg(k)));
      return constant * (k * n + k * m * ls * (ls + llk));
    }
    case BoundFamily::interval:
      break;
  }
  return constant * (k * n + 3 * k * m);
}

}  // namespace incidence
