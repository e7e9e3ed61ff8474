#pragma once

// Dyadic ranges over 0-based index sets and canonical decompositions.

#include <cstdint>
#include <vector>

namespace incidence {

/// The index range [start * 2^rank, (start + 1) * 2^rank - 1].
struct DyadicRange {
  std::uint64_t start = 0;
  unsigned rank = 0;

  std::uint64_t first() const { return start << rank; }
  std::uint64_t last() const { return ((start + 1) << rank) - 1; }
  std::uint64_t size() const { return std::uint64_t{1} << rank; }

  friend bool operator==(const DyadicRange&, const DyadicRange&) = default;
  friend auto operator<=>(const DyadicRange&, const DyadicRange&) = default;
};

/// Visits the canonical decomposition of [alpha, beta] left to right without
/// allocating. Requires alpha <= beta < n.
template <class Visit>
void for_each_canonical(std::uint64_t alpha, std::uint64_t beta, std::uint64_t n, Visit&& visit);

/// The unique minimal set of disjoint dyadic ranges whose union is exactly
/// [alpha, beta], ordered left to right. Throws InvalidInput when
/// alpha > beta or beta >= n.
std::vector<DyadicRange> canonical_decomposition(std::uint64_t alpha, std::uint64_t beta, std::uint64_t n);

/// All dyadic ranges contained in [0, n-1] that contain j, by increasing rank.
std::vector<DyadicRange> dyadic_memberships(std::uint64_t j, std::uint64_t n);

/// Membership counts under the two conventions: with the root range (when
/// [0, n-1] is itself dyadic) and without it.
struct MembershipCounts {
  std::size_t with_root = 0;
  std::size_t without_root = 0;
};
MembershipCounts membership_counts(std::uint64_t j, std::uint64_t n);

/// 2 * ceil(log2 n), the size bound for canonical decompositions (n >= 2).
std::size_t canonical_size_bound(std::uint64_t n);

namespace detail {
[[noreturn]] void throw_bad_dyadic_range(std::uint64_t alpha, std::uint64_t beta, std::uint64_t n);
}

template <class Visit>
void for_each_canonical(std::uint64_t alpha, std::uint64_t beta, std::uint64_t n, Visit&& visit) {
  if (alpha > beta || beta >= n) detail::throw_bad_dyadic_range(alpha, beta, n);
  // Greedy from the left: the largest aligned block that still fits.
  std::uint64_t pos = alpha;
  while (pos <= beta) {
    unsigned rank = 0;
    while (rank < 63) {
      const std::uint64_t next = std::uint64_t{1} << (rank + 1);
      if (pos % next != 0 || pos + next - 1 > beta) break;
      ++rank;
    }
    visit(DyadicRange{pos >> rank, rank});
    pos += std::uint64_t{1} << rank;
    if (pos == 0) break;  // wrapped
  }
}

}  // namespace incidence
