#pragma once

#include <vector>

#include "ust/errors.hpp"
#include "ust/graph.hpp"
#include "ust/matrix.hpp"
#include "ust/measure.hpp"

namespace ust {

inline constexpr double kOrderInf = std::numeric_limits<double>::infinity();

// Parameters of the p-order unbalanced Sobolev transport. Defaults follow
// the standard experimental configuration: b = lambda = 1, alpha = 0,
// p = 1, unit root weights, omega(e) = edge length.
struct UstParams {
  double p = 1.0;        // order in [1, inf]; kOrderInf for the sup form
  double b = 1.0;        // Lipschitz bound on the critic derivative
  double lambda = 1.0;   // Lagrange multiplier of the mass constraint
  double alpha = 0.0;    // root-interval shrinkage
  double w1_root = 1.0;  // w1(z0)
  double w2_root = 1.0;  // w2(z0)

  // Per-edge omega values indexed by edge id; empty means omega(e) = w_e.
  std::vector<double> omega;

  bool metric_mode() const {
    return w1_root == w2_root &&
           alpha < b * lambda / 2.0 + std::min(w1_root, w2_root);
  }
};

// Throws InvalidParams when the feasibility constraints fail
// (alpha range, nonnegativity, omega size/values, p >= 1).
void validate_params(const UstParams& params, EdgeId edge_count);

// Mass-imbalance coefficient: w1(z0) + b*lambda/2 - alpha when the first
// measure is at least as heavy, otherwise the w2 branch.
double theta(const UstParams& params, double mass_mu, double mass_nu);

// Cumulative subtree masses mu(gamma_e), one entry per tree edge in the
// preprocess order.
struct EdgeMassProfile {
  std::vector<double> values;
  double total_mass = 0.0;
};

// One leaf-to-root pass: each node's mass starts at its parent edge, child
// sums fold upward. Throws SupportOffGraph.
EdgeMassProfile edge_cumulative_masses(const RootedPreprocess& pre,
                                       const DiscreteMeasure& mu);

// Closed-form distance
//   b * (sum_e omega(e) |mu(gamma_e) - nu(gamma_e)|^p)^(1/p)
//     + theta * |mu(G) - nu(G)|,
// with the max over omega-positive tree edges when p = inf.
double ust_distance(const RootedPreprocess& pre, const UstParams& params,
                    const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Same value from two cached profiles (pairwise-matrix fast path).
double ust_distance_from_profiles(const RootedPreprocess& pre,
                                  const UstParams& params,
                                  const EdgeMassProfile& mu,
                                  const EdgeMassProfile& nu);

// Symmetric pairwise matrix over a measure family; requires metric-mode
// parameters (w1_root == w2_root), otherwise the result would not be
// symmetric. Profiles are computed once per measure.
Matrix pairwise_matrix(const RootedPreprocess& pre, const UstParams& params,
                       const std::vector<DiscreteMeasure>& measures);

// Number of tree edges on the union of the supports' root paths, i.e. the
// work a pair evaluation actually does.
std::size_t touched_edge_count(const RootedPreprocess& pre,
                               const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu);

}  // namespace ust
