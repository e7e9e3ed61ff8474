#pragma once

// Audit of the one-dimensional interval bound I <= k n + 3 k m. The points
// are cut into consecutive blocks of k in sorted order and every block is
// charged separately, so a violation can be traced to a single block.

#include <cstdint>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/graph.hpp"

namespace incidence {

struct IntervalBlock {
  std::size_t first_rank = 0;  // position of the first point in sorted order
  std::size_t size = 0;
  Rational lo, hi;  // hull of the block
  std::uint64_t incidences = 0;
  /// Intervals containing the whole hull (fewer than k when K_{k,k}-free).
  std::uint64_t containing = 0;
  /// e_i: intervals with a finite endpoint inside the hull that do not contain it.
  std::uint64_t endpoint_hits = 0;
  /// e_i (k - 1) + (k - 1) k; only meaningful for full blocks.
  std::uint64_t block_bound = 0;
  bool full = false;
  bool ok = true;
};

struct IntervalAuditReport {
  std::size_t n = 0, m = 0;
  unsigned k = 0;
  std::uint64_t incidences = 0;
  std::uint64_t bound = 0;  // k n + 3 k m
  std::vector<IntervalBlock> blocks;
  std::uint64_t endpoint_hits_total = 0;
  /// |P_N| * m for the final block, reported apart from the block ledger.
  std::uint64_t last_block_term = 0;

  bool blocks_ok() const;
  bool within_bound() const { return incidences <= bound; }
};

/// Points must be 1-dimensional and ranges 1-dimensional boxes. Throws
/// KkkPresent (with the witness) when G(P, B) contains K_{k,k}, and
/// VerdictUnknown when the search budget runs out.
IntervalAuditReport interval_audit(const std::vector<Point>& points, const std::vector<Box>& intervals, unsigned k,
                                   std::uint64_t node_budget = kDefaultKkkBudget);

}  // namespace incidence
