#include "incidence/dyadic.hpp"

#include <string>

#include "incidence/rational.hpp"

namespace incidence {

namespace detail {
void throw_bad_dyadic_range(std::uint64_t alpha, std::uint64_t beta, std::uint64_t n) {
  if (alpha > beta) {
    throw InvalidInput("invalid range: alpha " + std::to_string(alpha) + " > beta " + std::to_string(beta));
  }
  throw InvalidInput("range end " + std::to_string(beta) + " outside [0, " + std::to_string(n) + ")");
}
}  // namespace detail

std::vector<DyadicRange> canonical_decomposition(std::uint64_t alpha, std::uint64_t beta, std::uint64_t n) {
  std::vector<DyadicRange> out;
  for_each_canonical(alpha, beta, n, [&out](const DyadicRange& r) { out.push_back(r); });
  return out;
}

std::vector<DyadicRange> dyadic_memberships(std::uint64_t j, std::uint64_t n) {
  if (j >= n) throw InvalidInput("index " + std::to_string(j) + " outside [0, n-1]");
  std::vector<DyadicRange> out;
  for (unsigned rank = 0; rank < 64; ++rank) {
    const DyadicRange r{j >> rank, rank};
    if (r.last() >= n) break;
    out.push_back(r);
    if (r.first() == 0 && r.last() == n - 1) break;
  }
  return out;
}

MembershipCounts membership_counts(std::uint64_t j, std::uint64_t n) {
  const auto all = dyadic_memberships(j, n);
  MembershipCounts c;
  c.with_root = all.size();
  const bool root_dyadic = !all.empty() && all.back().first() == 0 && all.back().last() == n - 1 && n > 1;
  c.without_root = root_dyadic ? all.size() - 1 : all.size();
  return c;
}

std::size_t canonical_size_bound(std::uint64_t n) { return 2 * static_cast<std::size_t>(ceil_log2(n)); }

}  // namespace incidence
