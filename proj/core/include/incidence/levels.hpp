#pragma once

// Levels with respect to hyperplanes, depth with respect to shapes, the
// level-class partition, shallow and depth censuses, and census schedules.
//
// Censuses never assert an asymptotic claim. Each row pairs an exact count
// with a reference value so a caller can fit the hidden constant.
//
// A band "between the a-level and the b-level" is read as the half-open
// interval [a, b). Rows also carry the count for the closed interval [a, b]
// so the alternative reading can be inspected.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/graph.hpp"

namespace incidence {

/// Number of hyperplanes lying on or below p.
std::uint64_t level(const Point& p, const std::vector<Hyperplane>& hs);

/// Number of shapes containing p (closed containment).
std::uint64_t depth(const Point& p, const std::vector<Range>& shapes);

/// Level of every point, from one pass over the instance.
std::vector<std::uint64_t> levels(const std::vector<Point>& points, const std::vector<Hyperplane>& hs);

struct LevelProfile {
  std::vector<std::uint64_t> values;  // level or depth of each point
  std::vector<std::size_t> class_of;  // class index of each point
  std::vector<std::vector<Index>> classes;  // P_0, P_1, ...
};

/// P_0: value < m/r. P_i (i >= 1): value in [2^(i-1) m/r, 2^i m/r).
/// Requires 1 <= r <= m.
LevelProfile level_partition(std::vector<std::uint64_t> values, std::uint64_t m, std::uint64_t r);
LevelProfile level_partition(const std::vector<Point>& points, const std::vector<Hyperplane>& hs, std::uint64_t r);

struct CensusRow {
  std::uint64_t r = 0;
  std::uint64_t observed = 0;         // values in [m/r, 2m/r)
  std::uint64_t observed_closed = 0;  // values in [m/r, 2m/r]
  double reference = 0;
  double ratio = 0;  // observed / reference

  std::string to_csv() const;
  static std::string csv_header();
};

/// Counts values in the band of r. Requires 1 <= r and 2 k r <= m.
CensusRow census_row(const std::vector<std::uint64_t>& values, std::uint64_t m, unsigned k, std::uint64_t r,
                     double reference);

/// Shallow census of points against upper halfspaces, with reference
/// k r^floor(d/2). Verifies K_{k,k}-freeness first (throws KkkPresent).
CensusRow shallow_census(const std::vector<Point>& points, const std::vector<Halfspace>& upper, unsigned k,
                         std::uint64_t r, std::uint64_t node_budget = kDefaultKkkBudget);

/// Shallow census rows for several r from a single pass over the instance.
std::vector<CensusRow> shallow_census_sweep(const std::vector<Point>& points, const std::vector<Halfspace>& upper,
                                            unsigned k, const std::vector<std::uint64_t>& rs,
                                            std::uint64_t node_budget = kDefaultKkkBudget);

/// Reference union complexities F0(r).
enum class UnionFamily { pseudo_disks, fat_triangles };
double union_complexity(UnionFamily family, double r);
/// Iterated logarithm base 2.
unsigned log_star(double x);

using ComplexityFn = std::function<double(double)>;

/// Depth census of points against planar shapes with reference k F0(r).
CensusRow depth_census(const std::vector<Point>& points, const std::vector<Range>& shapes, unsigned k,
                       std::uint64_t r, const ComplexityFn& f0, std::uint64_t node_budget = kDefaultKkkBudget);

std::vector<CensusRow> depth_census_sweep(const std::vector<Point>& points, const std::vector<Range>& shapes,
                                          unsigned k, const std::vector<std::uint64_t>& rs, const ComplexityFn& f0,
                                          std::uint64_t node_budget = kDefaultKkkBudget);

/// The sweep r = 1, 2, 4, ... while 2 k r <= m.
std::vector<std::uint64_t> doubling_sweep(std::uint64_t m, unsigned k);

enum class ScheduleMode { general, fat };

struct CensusSchedule {
  ScheduleMode mode = ScheduleMode::general;
  std::vector<std::uint64_t> thresholds;  // t_0 < t_1 < ... < t_l
  std::size_t doubling_steps = 0;  // steps taken by doubling before the power continuation

  std::size_t length() const { return thresholds.empty() ? 0 : thresholds.size() - 1; }
};

/// General: t_0 = 2k, doubling while i <= c log2 k, then t_i = t_{i-1}^(c/(c-1)).
/// Fat: doubling while i <= max(1, ceil(3 log2 log2 k)), then
/// t_i = 2^sqrt(t_{i-1}/k). Every step is at least a doubling, which keeps
/// the thresholds strictly increasing for small k. Both stop at the first t_l >= m.
/// Requires k >= 1, c >= 2 and m >= 2k.
CensusSchedule census_schedule(unsigned k, std::uint64_t m, ScheduleMode mode, unsigned c = 4);

}  // namespace incidence
