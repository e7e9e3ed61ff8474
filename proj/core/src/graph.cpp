#include "incidence/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

namespace incidence {

IncidenceGraph IncidenceGraph::from_edges(std::size_t n, std::size_t m, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const Edge& e : edges) {
    if (e.first >= n || e.second >= m) throw InvalidInput("edge index out of bounds");
  }
  IncidenceGraph g;
  g.n = n;
  g.m = m;
  g.edges = std::move(edges);
  return g;
}

std::vector<std::vector<Index>> IncidenceGraph::ranges_of_points() const {
  std::vector<std::vector<Index>> adj(n);
  for (const Edge& e : edges) adj[e.first].push_back(e.second);
  return adj;
}

std::vector<std::vector<Index>> IncidenceGraph::points_of_ranges() const {
  std::vector<std::vector<Index>> adj(m);
  for (const Edge& e : edges) adj[e.second].push_back(e.first);
  return adj;
}

IncidenceGraph incidences_bruteforce(const std::vector<Point>& points, const std::vector<Range>& ranges) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < ranges.size(); ++j) {
      if (contains(ranges[j], points[i])) edges.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  return IncidenceGraph::from_edges(points.size(), ranges.size(), std::move(edges));
}

const char* to_string(KkkVerdict v) {
  switch (v) {
    case KkkVerdict::found:
      return "found";
    case KkkVerdict::none:
      return "none";
    case KkkVerdict::unknown:
      return "unknown";
  }
  return "?";
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (std::uint64_t w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Index> members(const Bits& b, std::size_t limit) {
  std::vector<Index> out;
  for (std::size_t w = 0; w < b.size() && out.size() < limit; ++w) {
    std::uint64_t word = b[w];
    while (word != 0 && out.size() < limit) {
      const int bit = std::countr_zero(word);
      out.push_back(static_cast<Index>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

KkkResult find_k2(const IncidenceGraph& g) {
  KkkResult result;
  const auto adj = g.ranges_of_points();
  std::unordered_map<std::uint64_t, Index> first_point;
  for (Index p = 0; p < adj.size(); ++p) {
    const auto& rs = adj[p];
    for (std::size_t a = 0; a < rs.size(); ++a) {
      for (std::size_t b = a + 1; b < rs.size(); ++b) {
        ++result.nodes_explored;
        const std::uint64_t key = static_cast<std::uint64_t>(rs[a]) * g.m + rs[b];
        auto [it, inserted] = first_point.emplace(key, p);
        if (!inserted) {
          result.verdict = KkkVerdict::found;
          result.points = {it->second, p};
          result.ranges = {rs[a], rs[b]};
          return result;
        }
      }
    }
  }
  result.verdict = KkkVerdict::none;
  return result;
}

struct SubsetSearch {
  unsigned k;
  std::uint64_t budget;
  std::vector<Bits> rows;  // candidate rows on the searched side
  std::vector<Index> row_ids;
  std::vector<Index> chosen;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  Bits hit;

  bool run(std::size_t start, const Bits& cur) {
    if (chosen.size() == k) {
      hit = cur;
      return true;
    }
    const std::size_t need = k - chosen.size();
    for (std::size_t i = start; i + need <= rows.size(); ++i) {
      if (++nodes > budget) {
        exhausted = true;
        return false;
      }
      Bits next(cur.size());
      for (std::size_t w = 0; w < cur.size(); ++w) next[w] = cur[w] & rows[i][w];
      if (popcount(next) < k) continue;
      chosen.push_back(row_ids[i]);
      if (run(i + 1, next)) return true;
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

KkkResult find_kkk(const IncidenceGraph& g, unsigned k, std::uint64_t node_budget) {
  if (k == 0) throw InvalidInput("k must be at least 1");
  KkkResult result;
  if (g.n < k || g.m < k || g.edges.empty()) {
    result.verdict = KkkVerdict::none;
    return result;
  }
  if (k == 1) {
    result.verdict = KkkVerdict::found;
    result.points = {g.edges.front().first};
    result.ranges = {g.edges.front().second};
    return result;
  }
  if (k == 2) return find_k2(g);

  // Search over k-subsets of the smaller side; rows are bitsets over the other.
  const bool over_ranges = g.m <= g.n;
  const std::size_t rows_n = over_ranges ? g.m : g.n;
  const std::size_t cols_n = over_ranges ? g.n : g.m;
  const std::size_t words = (cols_n + 63) / 64;

  std::vector<Bits> rows(rows_n, Bits(words, 0));
  std::vector<std::size_t> col_degree(cols_n, 0);
  for (const Edge& e : g.edges) {
    const std::size_t r = over_ranges ? e.second : e.first;
    const std::size_t c = over_ranges ? e.first : e.second;
    rows[r][c / 64] |= std::uint64_t{1} << (c % 64);
    ++col_degree[c];
  }
  Bits mask(words, 0);
  for (std::size_t c = 0; c < cols_n; ++c) {
    if (col_degree[c] >= k) mask[c / 64] |= std::uint64_t{1} << (c % 64);
  }

  SubsetSearch search{k, node_budget, {}, {}, {}, 0, false, {}};
  for (std::size_t r = 0; r < rows_n; ++r) {
    for (std::size_t w = 0; w < words; ++w) rows[r][w] &= mask[w];
    if (popcount(rows[r]) >= k) {
      search.rows.push_back(std::move(rows[r]));
      search.row_ids.push_back(static_cast<Index>(r));
    }
  }

  const bool found = search.run(0, mask);
  result.nodes_explored = search.nodes;
  if (found) {
    result.verdict = KkkVerdict::found;
    std::vector<Index> row_side = search.chosen;
    std::vector<Index> col_side = members(search.hit, k);
    if (over_ranges) {
      result.ranges = std::move(row_side);
      result.points = std::move(col_side);
    } else {
      result.points = std::move(row_side);
      result.ranges = std::move(col_side);
    }
  } else {
    result.verdict = search.exhausted ? KkkVerdict::unknown : KkkVerdict::none;
  }
  return result;
}

void require_kkk_free(const IncidenceGraph& g, unsigned k, std::uint64_t node_budget) {
  KkkResult r = find_kkk(g, k, node_budget);
  if (r.verdict == KkkVerdict::found) {
    throw KkkPresent("incidence graph contains K_{" + std::to_string(k) + "," + std::to_string(k) + "}",
                     std::move(r));
  }
  if (r.verdict == KkkVerdict::unknown) {
    throw VerdictUnknown("K_{k,k} search exhausted its budget after " + std::to_string(r.nodes_explored) +
                         " nodes");
  }
}

std::uint64_t BicliqueCover::size() const {
  std::uint64_t s = 0;
  for (const auto& p : pairs) s += p.points.size() + p.ranges.size();
  return s;
}

std::vector<Edge> BicliqueCover::flatten() const {
  std::vector<Edge> out;
  for (const auto& p : pairs) {
    for (Index a : p.points) {
      for (Index b : p.ranges) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool verify_cover(const BicliqueCover& cover, const IncidenceGraph& g) {
  for (const auto& p : cover.pairs) {
    for (Index a : p.points) {
      if (a >= g.n) return false;
    }
    for (Index b : p.ranges) {
      if (b >= g.m) return false;
    }
  }
  return cover.flatten() == g.edges;
}

CoverBound cover_bound(const BicliqueCover& cover, unsigned k) {
  if (k == 0) throw InvalidInput("k must be at least 1");
  CoverBound out;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < cover.pairs.size(); ++i) {
    const auto& p = cover.pairs[i];
    if (std::min(p.points.size(), p.ranges.size()) >= k) {
      out.offending_pair = i;
      out.witness.verdict = KkkVerdict::found;
      out.witness.points.assign(p.points.begin(), p.points.begin() + k);
      out.witness.ranges.assign(p.ranges.begin(), p.ranges.begin() + k);
      return out;
    }
    total += static_cast<std::uint64_t>(k) * (p.points.size() + p.ranges.size());
  }
  out.certified = true;
  out.bound = total;
  return out;
}

TraceCount shatter_trace_count(const std::vector<Point>& points, const std::vector<Range>& ranges,
                               std::optional<unsigned> k) {
  std::set<std::vector<Index>> traces;
  std::size_t heavy = 0;
  for (const Range& r : ranges) {
    std::vector<Index> trace;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (contains(r, points[i])) trace.push_back(static_cast<Index>(i));
    }
    if (k && trace.size() > *k) ++heavy;
    traces.insert(std::move(trace));
  }
  TraceCount out;
  out.distinct_traces = traces.size();
  if (k) out.heavy_ranges = heavy;
  return out;
}

}  // namespace incidence
