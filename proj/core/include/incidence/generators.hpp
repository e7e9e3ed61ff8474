#pragma once

// Seeded instance generators. A seed fully determines the output; draws use
// std::mt19937_64 directly (no library distributions) so instances do not
// depend on the standard library implementation.

#include <cstdint>
#include <random>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/instance_io.hpp"

namespace incidence {

/// Small deterministic helper over mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Points on an integer grid [0, grid)^d and boxes with random integer
/// sides; a side is left unbounded with probability 1/10.
Instance random_boxes(std::size_t n, std::size_t m, unsigned d, std::uint64_t seed, std::int64_t grid = 64);

/// Points on an integer grid and upper or lower halfspaces with small
/// rational coefficients.
Instance random_halfspaces(std::size_t n, std::size_t m, unsigned d, std::uint64_t seed, std::int64_t grid = 64);

/// Planar points and curtains with rational slopes and occasional open ends.
Instance random_curtains(std::size_t n, std::size_t m, std::uint64_t seed, std::int64_t grid = 64);

/// Fat triangles (every angle >= delta) with centers around [0, extent]^2
/// and diameters spread log-uniformly between extent/2^12 and extent.
std::vector<Triangle> random_fat_triangles(std::size_t m, std::uint64_t seed, double delta, std::int64_t extent);

/// Points on [0, 2^16)^2 with fat triangles over the same square.
Instance random_fat(std::size_t n, std::size_t m, std::uint64_t seed, double delta);

/// K_{k,k}-free intervals: windows of k consecutive points lie in fewer
/// than k accepted intervals. m is the number of candidates tried.
Instance kkk_free_intervals(std::size_t n, std::size_t m, unsigned k, std::uint64_t seed);

/// K_{2,2}-free upper halfplanes over the points (i, -i^2), i = 1..n: a
/// chain of chord halfplanes whose arcs share at most an endpoint, then
/// singleton halfplanes through single points with a skewed choice of point
/// so that the level bands are populated. Exactly m ranges.
Instance k22_free_halfplanes(std::size_t n, std::size_t m, std::uint64_t seed);

/// The point-line grid as an instance of lines (dimension 2).
Instance elekes_instance(unsigned N);

/// The grid pushed to 5D: points and general halfspaces.
Instance lower5d_instance(unsigned N);

}  // namespace incidence
