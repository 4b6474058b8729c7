#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ust/errors.hpp"

namespace ust {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr std::uint32_t kNoPos = std::numeric_limits<std::uint32_t>::max();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;

  NodeId other(NodeId n) const { return n == u ? v : u; }
};

// Undirected, connected, positively weighted graph. Edge ids follow input
// order so every downstream artifact can reference edges stably.
class PhysicalGraph {
public:
  PhysicalGraph() = default;

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeId>& incident_edges(NodeId v) const { return adjacency_[v]; }

private:
  friend PhysicalGraph build_graph(NodeId node_count,
                                   const std::vector<Edge>& edges);

  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
};

// Validates endpoints, positive weights, no self-loops/duplicates, and
// connectivity. Throws NonPositiveWeight, SelfLoop, DuplicateEdge,
// DisconnectedGraph.
PhysicalGraph build_graph(NodeId node_count, const std::vector<Edge>& edges);

struct UniquenessReport {
  bool ok = true;
  std::vector<NodeId> tied_nodes;  // nodes with >= 2 candidate predecessors
};

// Shortest-path tree from a root plus everything the closed form needs:
// per-node distances, parent edges, and tree edges in leaf-to-root order.
struct RootedPreprocess {
  NodeId root = 0;
  NodeId node_count = 0;
  EdgeId edge_count = 0;

  std::vector<double> dist;        // per node, distance to root
  std::vector<EdgeId> parent_edge; // per node, kNoEdge at root
  std::vector<NodeId> parent_node; // per node, == root at root

  // Tree edges ordered so every edge appears after all edges strictly
  // deeper in its subtree (leaf-to-root).
  std::vector<EdgeId> tree_edges;
  std::vector<std::uint32_t> tree_pos;  // edge id -> position, kNoPos if dropped
  std::vector<NodeId> tree_child;       // position -> deeper endpoint
  std::vector<double> tree_weight;      // position -> edge length
  std::vector<std::uint32_t> fold_to;   // position -> parent-edge position, kNoPos at root level

  std::vector<EdgeId> dropped_edges;  // edges no node path uses
  UniquenessReport uniqueness;

  double distance_to_root(NodeId v) const { return dist[v]; }
};

inline constexpr double kDefaultTieTol = 1e-9;

// Dijkstra from `root` with tie detection: a node whose shortest distance is
// achieved by two incident edges within tie_tol is recorded as tied.
// Throws NonUniqueShortestPath unless allow_ties, in which case the
// smallest-edge-id predecessor wins.
RootedPreprocess shortest_path_tree(const PhysicalGraph& g, NodeId root,
                                    double tie_tol = kDefaultTieTol,
                                    bool allow_ties = false);

// dist[v] lookup on a finished preprocess.
double graph_distance(const RootedPreprocess& pre, NodeId v);

// Non-throwing uniqueness probe for a candidate root.
UniquenessReport validate_root(const PhysicalGraph& g, NodeId root,
                               double tie_tol = kDefaultTieTol);

// Plain one-to-all distances, no uniqueness bookkeeping. Used by the exact
// oracle for pairwise costs.
std::vector<double> dijkstra_distances(const PhysicalGraph& g, NodeId source);

}  // namespace ust
