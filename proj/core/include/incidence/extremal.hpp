#pragma once

// Lower-bound instances, the favorability verifier and closed-form bound
// evaluators used to overlay predicted curves on measured counts.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/graph.hpp"
#include "incidence/reductions.hpp"

namespace incidence {

struct PointLineInstance {
  std::vector<Point> points;
  std::vector<Line> lines;
};

/// P = {1..N} x {1..2N^2}, L = {y = a x + b : a in 1..N, b in 1..N^2}.
/// Each line holds exactly N points, so I = N^4, and no two lines share two points.
PointLineInstance elekes_grid(unsigned N);

/// elekes_grid(N) pushed through pointline_to_5d (not yet certified).
ReductionResult lower_bound_5d(unsigned N);

struct FavorableVerdict {
  bool size_condition = true;   // every box holds >= threshold points
  bool shared_condition = true;  // no two boxes share two points (K_{2,2}-free)
  std::optional<Index> small_box;  // witness for a size failure
  KkkResult shared_witness;        // two points in two common boxes
  std::uint64_t incidences = 0;
  /// m * threshold; a lower bound on I whenever the size condition holds.
  std::uint64_t implied_lower_bound = 0;

  bool favorable() const { return size_condition && shared_condition; }
};

FavorableVerdict verify_favorable(const std::vector<Point>& points, const std::vector<Box>& boxes,
                                  std::uint64_t threshold);

enum class BoundFamily { interval, box, polyhedra, halfspace, ball, union_complexity, pseudo_disks, fat };

struct BoundFormula {
  BoundFamily family = BoundFamily::interval;
  unsigned d = 1;        // dimension, for box / halfspace / ball
  unsigned delta = 1;    // number of directions, for polyhedra
  double eps = 0.5;      // epsilon in the box and polyhedra rows
  std::function<double(double)> f0;  // union complexity, for union_complexity
};

/// Parses "interval", "box", "polyhedra", "halfspace", "ball",
/// "union-complexity", "pseudo-disks", "fat". Throws InvalidInput otherwise.
BoundFamily parse_bound_family(const std::string& tag);
std::string to_string(BoundFamily family);

/// Evaluates the closed form times `constant` (logs base 2). Log factors are
/// clamped so that every family is nondecreasing in n, m and k; for n = 1
/// the log-based families return k (1 + m) constant.
double eval_bound(const BoundFormula& formula, double n, double m, double k, double constant = 1.0);

}  // namespace incidence
