#pragma once

// Incidence graphs, the brute-force oracle, K_{k,k} detection and biclique
// covers with the cover-derived incidence bound.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "incidence/geom.hpp"

namespace incidence {

using Index = std::uint32_t;
using Edge = std::pair<Index, Index>;  // (point index, range index)

/// Bipartite incidence graph G(P, B); edges are sorted and unique.
struct IncidenceGraph {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;

  std::size_t incidences() const { return edges.size(); }

  /// Sorts and deduplicates; checks indices against n and m.
  static IncidenceGraph from_edges(std::size_t n, std::size_t m, std::vector<Edge> edges);

  std::vector<std::vector<Index>> ranges_of_points() const;
  std::vector<std::vector<Index>> points_of_ranges() const;
};

/// Exact edge set by pairwise containment tests.
IncidenceGraph incidences_bruteforce(const std::vector<Point>& points, const std::vector<Range>& ranges);

/// Same as above, for a homogeneous list of one range type.
template <class R>
IncidenceGraph incidences_bruteforce(const std::vector<Point>& points, const std::vector<R>& ranges) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < ranges.size(); ++j) {
      if (contains(ranges[j], points[i])) edges.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  return IncidenceGraph::from_edges(points.size(), ranges.size(), std::move(edges));
}

enum class KkkVerdict { found, none, unknown };

const char* to_string(KkkVerdict v);

struct KkkResult {
  KkkVerdict verdict = KkkVerdict::none;
  std::vector<Index> points;  // witness, when found
  std::vector<Index> ranges;
  std::uint64_t nodes_explored = 0;
};

inline constexpr std::uint64_t kDefaultKkkBudget = 20'000'000;

/// Searches for k points lying in k common ranges. Exact for k <= 2; for
/// k >= 3 a pruned search over k-subsets of the smaller side, which reports
/// `unknown` once `node_budget` search nodes are spent.
KkkResult find_kkk(const IncidenceGraph& g, unsigned k, std::uint64_t node_budget = kDefaultKkkBudget);

/// The graph contains K_{k,k}; carries the witness.
class KkkPresent : public InvalidInput {
 public:
  KkkPresent(const std::string& what, KkkResult w) : InvalidInput(what), witness(std::move(w)) {}
  KkkResult witness;
};

/// The K_{k,k} search ran out of budget.
class VerdictUnknown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws KkkPresent or VerdictUnknown unless the graph is K_{k,k}-free.
void require_kkk_free(const IncidenceGraph& g, unsigned k, std::uint64_t node_budget = kDefaultKkkBudget);

struct BicliquePair {
  std::vector<Index> points;
  std::vector<Index> ranges;
};

/// A family of pairs (A_i, B_i) with E = union of A_i x B_i.
struct BicliqueCover {
  std::vector<BicliquePair> pairs;

  /// sum_i |A_i| + |B_i|.
  std::uint64_t size() const;
  /// All covered edges, sorted and unique.
  std::vector<Edge> flatten() const;
};

/// True iff the union of the products equals the edge set exactly.
bool verify_cover(const BicliqueCover& cover, const IncidenceGraph& g);

struct CoverBound {
  bool certified = false;
  /// sum_i k (|A_i| + |B_i|) when certified.
  std::uint64_t bound = 0;
  /// Otherwise: the first pair with min(|A_i|, |B_i|) >= k and a K_{k,k} inside it.
  std::optional<std::size_t> offending_pair;
  KkkResult witness;
};

CoverBound cover_bound(const BicliqueCover& cover, unsigned k);

struct TraceCount {
  std::size_t distinct_traces = 0;
  /// Ranges holding more than k points, when k was supplied.
  std::optional<std::size_t> heavy_ranges;
};

/// Number of distinct sets P n obj over the ranges.
TraceCount shatter_trace_count(const std::vector<Point>& points, const std::vector<Range>& ranges,
                               std::optional<unsigned> k = std::nullopt);

}  // namespace incidence
