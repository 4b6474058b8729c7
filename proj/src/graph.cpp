#include "ust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>

namespace ust {

namespace {

std::uint64_t undirected_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

PhysicalGraph build_graph(NodeId node_count, const std::vector<Edge>& edges) {
  if (node_count < 1) throw DisconnectedGraph("graph needs at least one node");

  PhysicalGraph g;
  g.node_count_ = node_count;
  g.edges_ = edges;
  g.adjacency_.assign(node_count, {});

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges_[id];
    if (e.u >= node_count || e.v >= node_count)
      throw ParseError("edge " + std::to_string(id) + " references node beyond node count");
    if (e.u == e.v)
      throw SelfLoop("edge " + std::to_string(id) + " joins node " +
                     std::to_string(e.u) + " to itself");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw NonPositiveWeight("edge " + std::to_string(id) + " has length " +
                              std::to_string(e.weight));
    if (!seen.insert(undirected_key(e.u, e.v)).second)
      throw DuplicateEdge("edge " + std::to_string(id) + " repeats pair (" +
                          std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    g.adjacency_[e.u].push_back(id);
    g.adjacency_[e.v].push_back(id);
  }

  // connectivity
  std::vector<char> visited(node_count, 0);
  std::vector<NodeId> stack{0};
  visited[0] = 1;
  NodeId reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (EdgeId id : g.adjacency_[v]) {
      NodeId w = g.edges_[id].other(v);
      if (!visited[w]) {
        visited[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != node_count)
    throw DisconnectedGraph(std::to_string(node_count - reached) +
                            " node(s) unreachable from node 0");
  return g;
}

std::vector<double> dijkstra_distances(const PhysicalGraph& g, NodeId source) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), inf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (EdgeId id : g.incident_edges(v)) {
      const Edge& e = g.edge(id);
      NodeId w = e.other(v);
      double nd = d + e.weight;
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return dist;
}

namespace {

struct TieScan {
  std::vector<EdgeId> parent_edge;   // min-edge-id candidate per node
  UniquenessReport report;
};

// Post-pass over final distances: node v's predecessor candidates are the
// incident edges (u,v) with dist[u] < dist[v] and dist[u]+w within tie_tol
// of dist[v]. Two or more candidates means two distinct shortest paths end
// at v.
TieScan scan_predecessors(const PhysicalGraph& g, NodeId root,
                          const std::vector<double>& dist, double tie_tol) {
  TieScan out;
  out.parent_edge.assign(g.node_count(), kNoEdge);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == root) continue;
    EdgeId best = kNoEdge;
    int candidates = 0;
    for (EdgeId id : g.incident_edges(v)) {
      const Edge& e = g.edge(id);
      NodeId u = e.other(v);
      if (!(dist[u] < dist[v])) continue;
      if (dist[u] + e.weight <= dist[v] + tie_tol) {
        ++candidates;
        if (best == kNoEdge || id < best) best = id;
      }
    }
    out.parent_edge[v] = best;
    if (candidates >= 2) out.report.tied_nodes.push_back(v);
  }
  out.report.ok = out.report.tied_nodes.empty();
  return out;
}

}  // namespace

RootedPreprocess shortest_path_tree(const PhysicalGraph& g, NodeId root,
                                    double tie_tol, bool allow_ties) {
  if (root >= g.node_count())
    throw ParseError("root " + std::to_string(root) + " out of range");
  if (tie_tol < 0.0) throw InvalidParams("tie_tol must be nonnegative");

  RootedPreprocess pre;
  pre.root = root;
  pre.node_count = g.node_count();
  pre.edge_count = g.edge_count();
  pre.dist = dijkstra_distances(g, root);

  TieScan scan = scan_predecessors(g, root, pre.dist, tie_tol);
  pre.uniqueness = scan.report;
  if (!pre.uniqueness.ok && !allow_ties) {
    std::string nodes;
    for (NodeId v : pre.uniqueness.tied_nodes) {
      if (!nodes.empty()) nodes += ",";
      nodes += std::to_string(v);
    }
    throw NonUniqueShortestPath("tied nodes from root " + std::to_string(root) +
                                ": [" + nodes + "]");
  }

  pre.parent_edge = std::move(scan.parent_edge);
  pre.parent_node.assign(g.node_count(), root);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == root) continue;
    pre.parent_node[v] = g.edge(pre.parent_edge[v]).other(v);
  }

  // Leaf-to-root order: decreasing child distance (strict ancestor order is
  // implied because edge lengths are positive), edge id as a stable tiebreak.
  std::vector<NodeId> children;
  children.reserve(g.node_count() - 1);
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (v != root) children.push_back(v);
  std::sort(children.begin(), children.end(), [&](NodeId a, NodeId b) {
    if (pre.dist[a] != pre.dist[b]) return pre.dist[a] > pre.dist[b];
    return pre.parent_edge[a] < pre.parent_edge[b];
  });

  pre.tree_pos.assign(g.edge_count(), kNoPos);
  pre.tree_edges.reserve(children.size());
  pre.tree_child.reserve(children.size());
  pre.tree_weight.reserve(children.size());
  for (NodeId c : children) {
    EdgeId e = pre.parent_edge[c];
    pre.tree_pos[e] = static_cast<std::uint32_t>(pre.tree_edges.size());
    pre.tree_edges.push_back(e);
    pre.tree_child.push_back(c);
    pre.tree_weight.push_back(g.edge(e).weight);
  }

  pre.fold_to.assign(pre.tree_edges.size(), kNoPos);
  for (std::size_t i = 0; i < pre.tree_edges.size(); ++i) {
    NodeId up = pre.parent_node[pre.tree_child[i]];
    if (up != root) pre.fold_to[i] = pre.tree_pos[pre.parent_edge[up]];
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (pre.tree_pos[e] == kNoPos) pre.dropped_edges.push_back(e);

  return pre;
}

double graph_distance(const RootedPreprocess& pre, NodeId v) {
  if (v >= pre.node_count)
    throw ParseError("node " + std::to_string(v) + " out of range");
  return pre.dist[v];
}

UniquenessReport validate_root(const PhysicalGraph& g, NodeId root,
                               double tie_tol) {
  if (root >= g.node_count())
    throw ParseError("root " + std::to_string(root) + " out of range");
  std::vector<double> dist = dijkstra_distances(g, root);
  return scan_predecessors(g, root, dist, tie_tol).report;
}

}  // namespace ust
