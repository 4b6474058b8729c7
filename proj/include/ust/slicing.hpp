#pragma once

#include <cstdint>
#include <vector>

#include "ust/graph.hpp"
#include "ust/matrix.hpp"
#include "ust/measure.hpp"
#include "ust/ust.hpp"

namespace ust {

// Root nodes used for the sliced (root-averaged) variant. Roots are fixed
// once per dataset so a whole pairwise matrix sees the same geometry.
struct RootSet {
  std::vector<NodeId> roots;
  std::uint64_t seed = 0;
  bool truncated = false;  // fewer valid roots than requested
};

// Draws k distinct nodes uniformly without replacement from the nodes that
// pass validate_root, by walking a seeded permutation and keeping the first
// k valid ones. Returns all valid roots (truncated flag set) when fewer
// than k exist; throws NoValidRoot when none do.
RootSet sample_roots(const PhysicalGraph& g, std::uint32_t k, std::uint64_t seed,
                     double tie_tol = kDefaultTieTol);

// Mean of the per-root distances. Preprocesses are built once per root.
double sliced_ust(const PhysicalGraph& g, const RootSet& roots,
                  const UstParams& params, const DiscreteMeasure& mu,
                  const DiscreteMeasure& nu, double tie_tol = kDefaultTieTol);

// Mean of the per-root pairwise matrices; profile caching happens per root.
Matrix sliced_pairwise_matrix(const PhysicalGraph& g, const RootSet& roots,
                              const UstParams& params,
                              const std::vector<DiscreteMeasure>& measures,
                              double tie_tol = kDefaultTieTol);

}  // namespace ust
