#include "doctest.h"
#include "incidence/dyadic.hpp"
#include "incidence/rational.hpp"
#include "oracles.hpp"

using namespace incidence;

namespace {

using Span = std::pair<std::uint64_t, std::uint64_t>;

std::vector<Span> spans(const std::vector<DyadicRange>& rs) {
  std::vector<Span> out;
  for (const DyadicRange& r : rs) out.emplace_back(r.first(), r.last());
  return out;
}

}  // namespace

TEST_CASE("canonical decomposition examples") {
  CHECK(spans(canonical_decomposition(2, 3, 8)) == std::vector<Span>{{2, 3}});
  CHECK(spans(canonical_decomposition(0, 7, 8)) == std::vector<Span>{{0, 7}});
  const auto mid = spans(canonical_decomposition(1, 6, 8));
  CHECK(mid == std::vector<Span>{{1, 1}, {2, 3}, {4, 5}, {6, 6}});
  CHECK(mid.size() <= canonical_size_bound(8));
  CHECK(canonical_size_bound(8) == 6);
  CHECK_THROWS_AS(canonical_decomposition(3, 2, 8), InvalidInput);
  CHECK_THROWS_AS(canonical_decomposition(0, 8, 8), InvalidInput);
}

TEST_CASE("canonical decomposition matches exhaustive search") {
  // The exhaustive oracle also counts optimal covers: exactly one means unique.
  for (std::uint64_t n = 1; n <= 40; ++n) {
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a; b < n; ++b) {
        const auto got = spans(canonical_decomposition(a, b, n));
        const oracle::DyadicOptimum opt = oracle::min_dyadic_cover(a, b, n);
        REQUIRE(opt.ways == 1);
        CHECK(got == opt.example);
      }
    }
  }
}

TEST_CASE("memberships") {
  CHECK(spans(dyadic_memberships(0, 8)) == std::vector<Span>{{0, 0}, {0, 1}, {0, 3}, {0, 7}});
  CHECK(spans(dyadic_memberships(5, 8)) == std::vector<Span>{{5, 5}, {4, 5}, {4, 7}, {0, 7}});
  CHECK(spans(dyadic_memberships(0, 1)) == std::vector<Span>{{0, 0}});
  CHECK_THROWS_AS(dyadic_memberships(8, 8), InvalidInput);

  for (std::uint64_t n = 1; n <= 33; ++n) {
    const auto family = oracle::dyadic_family(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      std::vector<Span> want;
      for (auto [lo, hi] : family) {
        if (lo <= j && j <= hi) want.push_back({lo, hi});
      }
      std::sort(want.begin(), want.end(), [](Span x, Span y) { return x.second - x.first < y.second - y.first; });
      CHECK(spans(dyadic_memberships(j, n)) == want);
      const MembershipCounts c = membership_counts(j, n);
      CHECK(c.with_root <= ceil_log2(n) + 1);
      CHECK(c.with_root == want.size());
    }
  }
}
