#include "incidence/interval_audit.hpp"

#include <algorithm>
#include <numeric>

namespace incidence {

bool IntervalAuditReport::blocks_ok() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const IntervalBlock& b) { return b.ok; });
}

IntervalAuditReport interval_audit(const std::vector<Point>& points, const std::vector<Box>& intervals, unsigned k,
                                   std::uint64_t node_budget) {
  if (k == 0) throw InvalidInput("k must be at least 1");
  for (const Point& p : points) {
    if (p.dim() != 1) throw InvalidInput("interval audit expects 1-dimensional points");
  }
  for (const Box& b : intervals) {
    if (b.dim() != 1) throw InvalidInput("interval audit expects 1-dimensional intervals");
  }

  const IncidenceGraph g = incidences_bruteforce(points, intervals);
  require_kkk_free(g, k, node_budget);

  IntervalAuditReport report;
  report.n = points.size();
  report.m = intervals.size();
  report.k = k;
  report.incidences = g.incidences();
  report.bound = std::uint64_t{k} * report.n + 3 * std::uint64_t{k} * report.m;

  std::vector<Index> order(points.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return points[a][0] < points[b][0]; });

  const auto degree_of = g.ranges_of_points();
  for (std::size_t start = 0; start < order.size(); start += k) {
    IntervalBlock block;
    block.first_rank = start;
    block.size = std::min<std::size_t>(k, order.size() - start);
    block.full = block.size == k;
    block.lo = points[order[start]][0];
    block.hi = points[order[start + block.size - 1]][0];
    for (std::size_t i = start; i < start + block.size; ++i) block.incidences += degree_of[order[i]].size();

    for (const Box& iv : intervals) {
      const bool covers_lo = !iv.lo[0] || *iv.lo[0] <= block.lo;
      const bool covers_hi = !iv.hi[0] || *iv.hi[0] >= block.hi;
      if (covers_lo && covers_hi) {
        ++block.containing;
        continue;
      }
      const bool lo_inside = iv.lo[0] && *iv.lo[0] >= block.lo && *iv.lo[0] <= block.hi;
      const bool hi_inside = iv.hi[0] && *iv.hi[0] >= block.lo && *iv.hi[0] <= block.hi;
      if (lo_inside || hi_inside) ++block.endpoint_hits;
    }

    if (block.full) {
      block.block_bound = block.endpoint_hits * (k - 1) + std::uint64_t{k - 1} * k;
      block.ok = block.containing < k && block.incidences <= block.block_bound;
    }
    report.endpoint_hits_total += block.endpoint_hits;
    report.blocks.push_back(std::move(block));
  }
  if (!report.blocks.empty()) report.last_block_term = report.blocks.back().size * report.m;
  return report;
}

}  // namespace incidence
