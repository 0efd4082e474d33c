#pragma once

#include "chordal/persistence.hpp"

namespace chordal {

/// Exact bottleneck distance between the degree-dim parts of two diagrams:
/// the smallest r admitting a perfect matching between the diagrams
/// (diagonal projections allowed) with L-infinity cost at most r. Points
/// with infinite death match among themselves; a count mismatch gives
/// infinity. The result is a candidate distance (a pairwise coordinate gap
/// or a half persistence) found by binary search with bipartite matching.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                  int dim);

}  // namespace chordal
