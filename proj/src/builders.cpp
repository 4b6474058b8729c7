#include "ust/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

namespace ust {

PointCloud make_point_cloud(std::vector<std::vector<double>> points) {
  PointCloud pc;
  pc.points = std::move(points);
  if (pc.points.empty()) return pc;
  pc.dimension = pc.points.front().size();
  for (const auto& p : pc.points) {
    if (p.size() != pc.dimension)
      throw ParseError("point dimensions disagree: " + std::to_string(p.size()) +
                       " vs " + std::to_string(pc.dimension));
    for (double x : p)
      if (!std::isfinite(x)) throw ParseError("non-finite coordinate");
  }
  return pc;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

}  // namespace

Clustering farthest_point_clustering(const PointCloud& pc, std::uint32_t m,
                                     std::uint64_t seed) {
  const std::size_t n = pc.points.size();
  if (n == 0) throw EmptyCloud("no points to cluster");
  if (m < 1) throw InvalidParams("cluster count must be >= 1");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> center_ids{pick(rng)};

  std::vector<double> nearest_sq(n);
  std::vector<std::uint32_t> assignment(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    nearest_sq[i] = sq_dist(pc.points[i], pc.points[center_ids[0]]);

  while (center_ids.size() < m) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (nearest_sq[i] > nearest_sq[far]) far = i;
    if (nearest_sq[far] == 0.0) break;  // every remaining point duplicates a center
    center_ids.push_back(far);
    std::uint32_t cid = static_cast<std::uint32_t>(center_ids.size() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      double d = sq_dist(pc.points[i], pc.points[far]);
      if (d < nearest_sq[i]) {
        nearest_sq[i] = d;
        assignment[i] = cid;
      }
    }
  }

  Clustering out;
  out.centroids.dimension = pc.dimension;
  out.centroids.points.reserve(center_ids.size());
  for (std::size_t id : center_ids) out.centroids.points.push_back(pc.points[id]);
  out.assignment = std::move(assignment);
  return out;
}

namespace {

// Disjoint set for the component-stitching pass.
struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

std::uint64_t encode_pair(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

PhysicalGraph build_random_graph(const PointCloud& centroids,
                                 EdgeDensity density, std::uint64_t seed) {
  const std::uint64_t m = centroids.points.size();
  if (m < 2) throw SingleNode("need at least two centroids");

  {
    // coincident centroids would produce zero-length edges
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return centroids.points[a] < centroids.points[b];
    });
    for (std::size_t i = 1; i < m; ++i)
      if (centroids.points[order[i - 1]] == centroids.points[order[i]])
        throw DegenerateCentroids("points " + std::to_string(order[i - 1]) + " and " +
                                  std::to_string(order[i]) + " coincide");
  }

  const std::uint64_t all_pairs = m * (m - 1) / 2;
  double want = density == EdgeDensity::log
                    ? static_cast<double>(m) * std::log(static_cast<double>(m))
                    : std::pow(static_cast<double>(m), 1.5);
  std::uint64_t target = std::min<std::uint64_t>(
      all_pairs, static_cast<std::uint64_t>(std::ceil(want)));
  target = std::max<std::uint64_t>(target, 1);

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> chosen;
  chosen.reserve(target);
  if (all_pairs <= (1u << 22)) {
    // exact: shuffle every pair
    std::vector<std::uint64_t> pairs;
    pairs.reserve(all_pairs);
    for (NodeId u = 0; u + 1 < m; ++u)
      for (NodeId v = u + 1; v < m; ++v) pairs.push_back(encode_pair(u, v));
    std::shuffle(pairs.begin(), pairs.end(), rng);
    chosen.assign(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(target));
  } else {
    // sparse regime (target << all_pairs here): rejection sampling
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(target * 2);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(m - 1));
    while (chosen.size() < target) {
      NodeId u = pick(rng);
      NodeId v = pick(rng);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      std::uint64_t key = encode_pair(u, v);
      if (taken.insert(key).second) chosen.push_back(key);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(target + m);
  Dsu dsu(m);
  std::uint64_t components = m;
  for (std::uint64_t key : chosen) {
    auto u = static_cast<NodeId>(key >> 32);
    auto v = static_cast<NodeId>(key & 0xffffffffu);
    edges.push_back({u, v, std::sqrt(sq_dist(centroids.points[u], centroids.points[v]))});
    if (dsu.unite(u, v)) --components;
  }

  if (components > 1) {
    // group nodes by component, then add one random cross edge per merge
    std::vector<std::vector<NodeId>> groups;
    {
      std::vector<std::int64_t> slot(m, -1);
      for (NodeId v = 0; v < m; ++v) {
        std::uint32_t r = dsu.find(v);
        if (slot[r] < 0) {
          slot[r] = static_cast<std::int64_t>(groups.size());
          groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(v);
      }
    }
    while (groups.size() > 1) {
      std::uniform_int_distribution<std::size_t> comp(0, groups.size() - 1);
      std::size_t a = comp(rng);
      std::size_t b = comp(rng);
      while (b == a) b = comp(rng);
      std::uniform_int_distribution<std::size_t> in_a(0, groups[a].size() - 1);
      std::uniform_int_distribution<std::size_t> in_b(0, groups[b].size() - 1);
      NodeId u = groups[a][in_a(rng)];
      NodeId v = groups[b][in_b(rng)];
      edges.push_back({u, v, std::sqrt(sq_dist(centroids.points[u], centroids.points[v]))});
      groups[a].insert(groups[a].end(), groups[b].begin(), groups[b].end());
      groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(b));
    }
  }

  return build_graph(static_cast<NodeId>(m), edges);
}

}  // namespace ust
