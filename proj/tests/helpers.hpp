#pragma once

// Shared generators for the randomized suites. Masses are multiples of
// 2^-20 so that every partial sum is exact in double precision; the
// exact-cancellation identities (mass translation, balanced independence)
// then hold bit-for-bit and the tight tolerances are meaningful.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "ust/graph.hpp"
#include "ust/measure.hpp"

namespace testutil {

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo,
                                 std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// Random mass on the 2^-20 grid in (0, hi].
inline double grid_mass(std::mt19937_64& rng, double hi = 4.0) {
  auto steps = static_cast<std::uint64_t>(std::ldexp(hi, 20));
  return std::ldexp(static_cast<double>(uniform_int(rng, 1, steps)), -20);
}

inline ust::PhysicalGraph random_tree(std::mt19937_64& rng, ust::NodeId max_nodes,
                                      double wlo = 0.1, double whi = 2.0) {
  auto n = static_cast<ust::NodeId>(uniform_int(rng, 2, max_nodes));
  std::vector<ust::Edge> edges;
  for (ust::NodeId v = 1; v < n; ++v) {
    auto parent = static_cast<ust::NodeId>(uniform_int(rng, 0, v - 1));
    edges.push_back({parent, v, uniform_real(rng, wlo, whi)});
  }
  return ust::build_graph(n, edges);
}

inline ust::PhysicalGraph random_graph(std::mt19937_64& rng, ust::NodeId max_nodes,
                                       double extra_edges_per_node = 1.0,
                                       double wlo = 0.1, double whi = 2.0) {
  auto n = static_cast<ust::NodeId>(uniform_int(rng, 2, max_nodes));
  std::vector<ust::Edge> edges;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  for (ust::NodeId v = 1; v < n; ++v) {
    auto parent = static_cast<ust::NodeId>(uniform_int(rng, 0, v - 1));
    edges.push_back({parent, v, uniform_real(rng, wlo, whi)});
    used[parent][v] = used[v][parent] = 1;
  }
  auto extra = static_cast<std::uint64_t>(extra_edges_per_node * n);
  for (std::uint64_t k = 0; k < extra; ++k) {
    auto u = static_cast<ust::NodeId>(uniform_int(rng, 0, n - 1));
    auto v = static_cast<ust::NodeId>(uniform_int(rng, 0, n - 1));
    if (u == v || used[u][v]) continue;
    used[u][v] = used[v][u] = 1;
    edges.push_back({u, v, uniform_real(rng, wlo, whi)});
  }
  return ust::build_graph(n, edges);
}

// Graph plus a uniqueness-passing root; regenerates on the rare tie.
inline std::pair<ust::PhysicalGraph, ust::NodeId> random_rooted_graph(
    std::mt19937_64& rng, ust::NodeId max_nodes, double extra_edges_per_node = 1.0) {
  for (;;) {
    ust::PhysicalGraph g = random_graph(rng, max_nodes, extra_edges_per_node);
    auto root = static_cast<ust::NodeId>(uniform_int(rng, 0, g.node_count() - 1));
    if (ust::validate_root(g, root).ok) return {std::move(g), root};
  }
}

inline ust::DiscreteMeasure random_measure(std::mt19937_64& rng,
                                           ust::NodeId node_count,
                                           std::uint32_t max_supports,
                                           double mass_hi = 4.0) {
  auto k = static_cast<std::uint32_t>(uniform_int(rng, 1, max_supports));
  std::vector<ust::MassEntry> entries;
  for (std::uint32_t i = 0; i < k; ++i) {
    auto node = static_cast<ust::NodeId>(uniform_int(rng, 0, node_count - 1));
    entries.push_back({node, grid_mass(rng, mass_hi)});
  }
  return ust::new_measure(std::move(entries));
}

// Partner with exactly the same total mass (exact on the dyadic grid).
inline ust::DiscreteMeasure random_balanced_partner(std::mt19937_64& rng,
                                                    ust::NodeId node_count,
                                                    std::uint32_t max_supports,
                                                    const ust::DiscreteMeasure& mu) {
  for (;;) {
    auto k = static_cast<std::uint32_t>(uniform_int(rng, 1, max_supports));
    std::vector<ust::MassEntry> entries;
    double remaining = mu.total_mass();
    bool feasible = true;
    for (std::uint32_t i = 0; i + 1 < k; ++i) {
      double cap = remaining / 2.0;
      if (cap < std::ldexp(1.0, -20)) {
        feasible = false;
        break;
      }
      double m = grid_mass(rng, cap);
      auto node = static_cast<ust::NodeId>(uniform_int(rng, 0, node_count - 1));
      entries.push_back({node, m});
      remaining -= m;  // exact: both operands on the grid
    }
    if (!feasible || remaining <= 0.0) continue;
    auto node = static_cast<ust::NodeId>(uniform_int(rng, 0, node_count - 1));
    entries.push_back({node, remaining});
    ust::DiscreteMeasure nu = ust::new_measure(std::move(entries));
    if (nu.total_mass() == mu.total_mass()) return nu;
  }
}

}  // namespace testutil
