#include "ust/slicing.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ust {

RootSet sample_roots(const PhysicalGraph& g, std::uint32_t k, std::uint64_t seed,
                     double tie_tol) {
  if (k < 1 || k > g.node_count())
    throw InvalidParams("slice count " + std::to_string(k) + " outside [1, " +
                        std::to_string(g.node_count()) + "]");

  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  RootSet set;
  set.seed = seed;
  std::uint32_t examined = 0;
  for (NodeId candidate : order) {
    ++examined;
    if (validate_root(g, candidate, tie_tol).ok) {
      set.roots.push_back(candidate);
      if (set.roots.size() == k) break;
    }
  }
  if (set.roots.empty())
    throw NoValidRoot("no node passes the shortest-path uniqueness check");
  set.truncated = set.roots.size() < k && examined == g.node_count();
  return set;
}

double sliced_ust(const PhysicalGraph& g, const RootSet& roots,
                  const UstParams& params, const DiscreteMeasure& mu,
                  const DiscreteMeasure& nu, double tie_tol) {
  if (roots.roots.empty()) throw NoValidRoot("empty root set");
  double sum = 0.0;
  for (NodeId root : roots.roots) {
    RootedPreprocess pre = shortest_path_tree(g, root, tie_tol);
    sum += ust_distance(pre, params, mu, nu);
  }
  return sum / static_cast<double>(roots.roots.size());
}

Matrix sliced_pairwise_matrix(const PhysicalGraph& g, const RootSet& roots,
                              const UstParams& params,
                              const std::vector<DiscreteMeasure>& measures,
                              double tie_tol) {
  if (roots.roots.empty()) throw NoValidRoot("empty root set");
  Matrix acc;
  bool first = true;
  for (NodeId root : roots.roots) {
    RootedPreprocess pre = shortest_path_tree(g, root, tie_tol);
    Matrix m = pairwise_matrix(pre, params, measures);
    if (first) {
      acc = std::move(m);
      first = false;
    } else {
      for (std::size_t idx = 0; idx < acc.data().size(); ++idx)
        acc.data()[idx] += m.data()[idx];
    }
  }
  double inv = 1.0 / static_cast<double>(roots.roots.size());
  for (double& x : acc.data()) x *= inv;
  return acc;
}

}  // namespace ust
