#include "ust/ust.hpp"

#include <cmath>
#include <string>

namespace ust {

void validate_params(const UstParams& params, EdgeId edge_count) {
  if (!(params.p >= 1.0))
    throw InvalidParams("order p must be >= 1, got " + std::to_string(params.p));
  if (params.b < 0.0 || params.lambda < 0.0 || params.w1_root < 0.0 ||
      params.w2_root < 0.0)
    throw InvalidParams("b, lambda and root weights must be nonnegative");
  double alpha_max = 0.5 * (params.b * params.lambda + params.w1_root + params.w2_root);
  if (params.alpha < 0.0 || params.alpha > alpha_max)
    throw InvalidParams("alpha = " + std::to_string(params.alpha) +
                        " outside [0, " + std::to_string(alpha_max) + "]");
  if (!params.omega.empty()) {
    if (params.omega.size() != edge_count)
      throw InvalidParams("omega has " + std::to_string(params.omega.size()) +
                          " entries for " + std::to_string(edge_count) + " edges");
    for (double w : params.omega)
      if (w < 0.0 || !std::isfinite(w))
        throw InvalidParams("omega entries must be finite and nonnegative");
  }
}

double theta(const UstParams& params, double mass_mu, double mass_nu) {
  double root_weight = mass_mu >= mass_nu ? params.w1_root : params.w2_root;
  return root_weight + params.b * params.lambda / 2.0 - params.alpha;
}

namespace {

void check_support(const RootedPreprocess& pre, const DiscreteMeasure& m) {
  if (!m.empty() && m.max_node() >= pre.node_count)
    throw SupportOffGraph("support node " + std::to_string(m.max_node()) +
                          " not in graph of " + std::to_string(pre.node_count) +
                          " nodes");
}

// Signed masses dropped at each support's parent edge.
void seed_deltas(const RootedPreprocess& pre, const DiscreteMeasure& m,
                 double sign, std::vector<double>& delta) {
  for (const MassEntry& e : m.entries()) {
    if (e.node == pre.root) continue;
    delta[pre.tree_pos[pre.parent_edge[e.node]]] += sign * e.mass;
  }
}

double omega_at(const RootedPreprocess& pre, const UstParams& params,
                std::size_t pos) {
  return params.omega.empty() ? pre.tree_weight[pos]
                              : params.omega[pre.tree_edges[pos]];
}

// Folds deltas leaf-to-root, accumulating the p-th power sum (or the sup)
// on the fly. Zero entries are skipped; edges outside the union of support
// paths never go nonzero, so the work is linear in the touched edges.
double base_term(const RootedPreprocess& pre, const UstParams& params,
                 std::vector<double>& delta) {
  const std::size_t n = delta.size();
  if (params.p == kOrderInf) {
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = delta[i];
      if (d == 0.0) continue;
      if (omega_at(pre, params, i) > 0.0) peak = std::max(peak, std::fabs(d));
      if (pre.fold_to[i] != kNoPos) delta[pre.fold_to[i]] += d;
    }
    return params.b * peak;
  }

  double acc = 0.0;
  const double p = params.p;
  for (std::size_t i = 0; i < n; ++i) {
    double d = delta[i];
    if (d == 0.0) continue;
    double w = omega_at(pre, params, i);
    if (p == 1.0)
      acc += w * std::fabs(d);
    else if (p == 2.0)
      acc += w * d * d;
    else
      acc += w * std::pow(std::fabs(d), p);
    if (pre.fold_to[i] != kNoPos) delta[pre.fold_to[i]] += d;
  }
  if (p == 1.0) return params.b * acc;
  if (p == 2.0) return params.b * std::sqrt(acc);
  return params.b * std::pow(acc, 1.0 / p);
}

}  // namespace

EdgeMassProfile edge_cumulative_masses(const RootedPreprocess& pre,
                                       const DiscreteMeasure& mu) {
  check_support(pre, mu);
  EdgeMassProfile prof;
  prof.total_mass = mu.total_mass();
  prof.values.assign(pre.tree_edges.size(), 0.0);
  seed_deltas(pre, mu, 1.0, prof.values);
  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    if (prof.values[i] != 0.0 && pre.fold_to[i] != kNoPos)
      prof.values[pre.fold_to[i]] += prof.values[i];
  }
  return prof;
}

double ust_distance(const RootedPreprocess& pre, const UstParams& params,
                    const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  validate_params(params, pre.edge_count);
  check_support(pre, mu);
  check_support(pre, nu);

  std::vector<double> delta(pre.tree_edges.size(), 0.0);
  seed_deltas(pre, mu, 1.0, delta);
  seed_deltas(pre, nu, -1.0, delta);
  double base = base_term(pre, params, delta);
  return base + theta(params, mu.total_mass(), nu.total_mass()) *
                    std::fabs(mu.total_mass() - nu.total_mass());
}

double ust_distance_from_profiles(const RootedPreprocess& pre,
                                  const UstParams& params,
                                  const EdgeMassProfile& mu,
                                  const EdgeMassProfile& nu) {
  const std::size_t n = pre.tree_edges.size();
  if (mu.values.size() != n || nu.values.size() != n)
    throw InvalidParams("profile length does not match the preprocess");

  double acc = 0.0;
  double peak = 0.0;
  const double p = params.p;
  for (std::size_t i = 0; i < n; ++i) {
    double d = mu.values[i] - nu.values[i];
    if (d == 0.0) continue;
    double w = omega_at(pre, params, i);
    if (p == kOrderInf) {
      if (w > 0.0) peak = std::max(peak, std::fabs(d));
    } else if (p == 1.0) {
      acc += w * std::fabs(d);
    } else if (p == 2.0) {
      acc += w * d * d;
    } else {
      acc += w * std::pow(std::fabs(d), p);
    }
  }

  double base;
  if (p == kOrderInf)
    base = params.b * peak;
  else if (p == 1.0)
    base = params.b * acc;
  else if (p == 2.0)
    base = params.b * std::sqrt(acc);
  else
    base = params.b * std::pow(acc, 1.0 / p);

  return base + theta(params, mu.total_mass, nu.total_mass) *
                    std::fabs(mu.total_mass - nu.total_mass);
}

std::size_t touched_edge_count(const RootedPreprocess& pre,
                               const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu) {
  check_support(pre, mu);
  check_support(pre, nu);
  std::vector<char> touched(pre.tree_edges.size(), 0);
  for (const DiscreteMeasure* m : {&mu, &nu}) {
    for (const MassEntry& e : m->entries()) {
      if (e.node == pre.root) continue;
      touched[pre.tree_pos[pre.parent_edge[e.node]]] = 1;
    }
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < touched.size(); ++i) {
    if (!touched[i]) continue;
    ++count;
    if (pre.fold_to[i] != kNoPos) touched[pre.fold_to[i]] = 1;
  }
  return count;
}

Matrix pairwise_matrix(const RootedPreprocess& pre, const UstParams& params,
                       const std::vector<DiscreteMeasure>& measures) {
  validate_params(params, pre.edge_count);
  if (params.w1_root != params.w2_root)
    throw InvalidParams("pairwise matrix needs w1_root == w2_root, got " +
                        std::to_string(params.w1_root) + " vs " +
                        std::to_string(params.w2_root));
  if (measures.empty()) throw InvalidParams("need at least one measure");

  std::vector<EdgeMassProfile> profiles;
  profiles.reserve(measures.size());
  for (const DiscreteMeasure& m : measures)
    profiles.push_back(edge_cumulative_masses(pre, m));

  const std::size_t n = measures.size();
  Matrix out(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = ust_distance_from_profiles(pre, params, profiles[i], profiles[j]);
      out.at(i, j) = d;
      out.at(j, i) = d;
    }
  }
  return out;
}

}  // namespace ust
