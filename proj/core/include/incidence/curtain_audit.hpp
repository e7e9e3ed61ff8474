#pragma once

// Binary slab recursion for curtains. Points are split at the median x rank;
// a curtain whose x range stays inside one half recurses there, and a curtain
// crossing the median becomes a wedge in each half ({y <= ax+b, x >= lo} on
// the left, {y <= ax+b, x <= hi} on the right), which is counted at the node
// through the 3D wedge lift. The report reuses the slab audit tree format.

#include <vector>

#include "incidence/geom.hpp"
#include "incidence/slab_audit.hpp"

namespace incidence {

struct CurtainAuditOptions {
  unsigned k = 2;
  std::size_t leaf_size = 2;  // nodes with at most this many points are brute forced
  bool check_oracle = true;
};

RecursionReport curtain_audit(const std::vector<Point>& points, const std::vector<Curtain>& curtains,
                              const CurtainAuditOptions& options = {});

}  // namespace incidence
