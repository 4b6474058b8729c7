#pragma once

#include <cstdint>
#include <vector>

#include "ust/graph.hpp"

namespace ust {

struct PointCloud {
  std::vector<std::vector<double>> points;  // all rows share one dimension
  std::size_t dimension = 0;
};

PointCloud make_point_cloud(std::vector<std::vector<double>> points);

struct Clustering {
  PointCloud centroids;                  // centers are input points
  std::vector<std::uint32_t> assignment; // per input point, nearest center
};

// Greedy k-center: seeded uniform first center, then repeatedly the point
// farthest (Euclidean) from the chosen ones, capped at the number of
// distinct points. Throws EmptyCloud.
Clustering farthest_point_clustering(const PointCloud& pc, std::uint32_t m,
                                     std::uint64_t seed);

enum class EdgeDensity { log, sqrt };  // ~M ln M or ~M^(3/2) sampled edges

// Random graph over centroids: samples the target number of distinct node
// pairs uniformly without replacement (capped at all pairs), weights them
// by Euclidean distance, then stitches the connected components together
// with uniformly random cross-component edges. Throws SingleNode and
// DegenerateCentroids (coincident points would force zero-length edges).
PhysicalGraph build_random_graph(const PointCloud& centroids,
                                 EdgeDensity density, std::uint64_t seed);

}  // namespace ust
