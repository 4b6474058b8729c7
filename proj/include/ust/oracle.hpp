#pragma once

#include <cstdint>
#include <vector>

#include "ust/graph.hpp"
#include "ust/matrix.hpp"
#include "ust/measure.hpp"
#include "ust/ust.hpp"

namespace ust {

// Sentinel tag for the auxiliary point that absorbs untransported mass.
inline constexpr std::int64_t kAuxPoint = -1;

// Balanced bipartite transportation instance. Costs may be negative.
struct TransportInstance {
  std::vector<std::int64_t> supply_tags;  // node id or kAuxPoint
  std::vector<std::int64_t> demand_tags;
  std::vector<double> supplies;
  std::vector<double> demands;
  Matrix cost;  // supplies.size() x demands.size()

  double total_supply() const;
  double total_demand() const;
};

struct TransportSolution {
  double value = 0.0;
  Matrix plan;
  std::vector<double> dual_u;
  std::vector<double> dual_v;

  // Mass transported between real points (aux row/column excluded).
  double real_mass(const TransportInstance& inst) const;
};

// Post-solve certificate: all of these are checked against the instance.
struct SolveCertificate {
  double marginal_err = 0.0;    // max |row sum - supply|, |col sum - demand|
  double value_err = 0.0;       // |value - <plan, cost>| / max(1, |value|)
  double slackness_err = 0.0;   // max |u_i + v_j - c_ij| where plan > 0
  double dual_violation = 0.0;  // max (u_i + v_j - c_ij) over all cells
  double duality_gap = 0.0;     // |value - dual objective| / max(1, |value|)

  bool ok(double tol = 1e-8) const {
    return marginal_err <= tol && value_err <= tol && slackness_err <= tol &&
           dual_violation <= tol && duality_gap <= tol;
  }
};

SolveCertificate certify(const TransportInstance& inst,
                         const TransportSolution& sol);

// Exact optimum by transportation simplex with Bland-style anti-cycling.
// Throws Unbalanced when supplies and demands disagree, DegenerateCycling
// if the pivot cap is ever hit.
TransportSolution solve_transportation(const TransportInstance& inst);

// Balanced reduction of the entropy partial transport: attach an auxiliary
// point, extend costs with
//   c^(x,y) = b (d_G(x,y) - lambda),  c^(x,aux) = w1(x),
//   c^(aux,y) = w2(y),                c^(aux,aux) = 0,
// where w_i(x) = weight_a1 * d_G(root, x) + w_i_root, and give the auxiliary
// point mass nu(G) on the supply side and mu(G) on the demand side.
// weight_a1 must lie in [0, b] so the weights stay b-Lipschitz; throws
// InvalidWeightSlope otherwise. `lambda` may be any real (the Lagrangian
// sweep needs negative values); the overload without it uses params.lambda.
TransportInstance extend_problem(const PhysicalGraph& g, NodeId root,
                                 const UstParams& params, double weight_a1,
                                 const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, double lambda);
TransportInstance extend_problem(const PhysicalGraph& g, NodeId root,
                                 const UstParams& params, double weight_a1,
                                 const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu);

// Optimal value of the extended problem == ET_lambda(mu, nu).
double et_lambda(const PhysicalGraph& g, NodeId root, const UstParams& params,
                 double weight_a1, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu, double lambda);
double et_lambda(const PhysicalGraph& g, NodeId root, const UstParams& params,
                 double weight_a1, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu);

// Transportation instance with cost d_G^p between the two supports.
// Requires equal total mass (1e-9 relative); throws UnbalancedMasses.
TransportInstance wasserstein_instance(const PhysicalGraph& g, double p,
                                       const DiscreteMeasure& mu,
                                       const DiscreteMeasure& nu);

// p-Wasserstein with cost d_G^p via the transportation LP.
double wasserstein(const PhysicalGraph& g, double p, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu);

struct SweepPoint {
  double lambda = 0.0;
  double plan_mass = 0.0;  // transported mass between real points
  double et_value = 0.0;
};

// Solves the extended problem across an ascending lambda grid; pairwise
// distances are computed once and shared. Plan mass is nondecreasing in
// lambda, which is what turns this into a mass-target search.
std::vector<SweepPoint> mass_sweep(const PhysicalGraph& g, NodeId root,
                                   const UstParams& params, double weight_a1,
                                   const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu,
                                   const std::vector<double>& lambdas);

struct MassTargetResult {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double value = 0.0;  // ET at the bracketing lambda closest in mass + lambda*b*m
};

// Brackets a mass target m within a sweep and evaluates the constrained
// transport value as ET_{c,lambda} + lambda * b * m.
MassTargetResult realize_mass_target(const std::vector<SweepPoint>& sweep,
                                     double b, double target_mass);

}  // namespace ust
