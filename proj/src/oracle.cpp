#include "ust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace ust {

double TransportInstance::total_supply() const {
  return std::accumulate(supplies.begin(), supplies.end(), 0.0);
}

double TransportInstance::total_demand() const {
  return std::accumulate(demands.begin(), demands.end(), 0.0);
}

double TransportSolution::real_mass(const TransportInstance& inst) const {
  double mass = 0.0;
  for (std::size_t i = 0; i < inst.supplies.size(); ++i) {
    if (inst.supply_tags[i] == kAuxPoint) continue;
    for (std::size_t j = 0; j < inst.demands.size(); ++j) {
      if (inst.demand_tags[j] == kAuxPoint) continue;
      mass += plan.at(i, j);
    }
  }
  return mass;
}

SolveCertificate certify(const TransportInstance& inst,
                         const TransportSolution& sol) {
  const std::size_t m = inst.supplies.size();
  const std::size_t n = inst.demands.size();
  SolveCertificate cert;

  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += sol.plan.at(i, j);
    cert.marginal_err = std::max(cert.marginal_err, std::fabs(row - inst.supplies[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m; ++i) col += sol.plan.at(i, j);
    cert.marginal_err = std::max(cert.marginal_err, std::fabs(col - inst.demands[j]));
  }

  double inner = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) inner += sol.plan.at(i, j) * inst.cost.at(i, j);
  cert.value_err = std::fabs(inner - sol.value) / std::max(1.0, std::fabs(sol.value));

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double slack = sol.dual_u[i] + sol.dual_v[j] - inst.cost.at(i, j);
      cert.dual_violation = std::max(cert.dual_violation, slack);
      if (sol.plan.at(i, j) > 0.0)
        cert.slackness_err = std::max(cert.slackness_err, std::fabs(slack));
    }
  }

  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += sol.dual_u[i] * inst.supplies[i];
  for (std::size_t j = 0; j < n; ++j) dual_obj += sol.dual_v[j] * inst.demands[j];
  cert.duality_gap = std::fabs(dual_obj - sol.value) / std::max(1.0, std::fabs(sol.value));
  return cert;
}

namespace {

// Dense transportation simplex. Basis kept as a spanning tree of the
// bipartite row/column graph; entering by Dantzig's rule with a permanent
// switch to Bland's smallest-index rule once the objective stalls.
class TransportationSimplex {
public:
  explicit TransportationSimplex(const TransportInstance& inst)
      : inst_(inst),
        m_(inst.supplies.size()),
        n_(inst.demands.size()),
        alloc_(m_, n_, 0.0),
        basic_(m_ * n_, 0) {
    double scale = 1.0;
    for (double c : inst.cost.data()) scale = std::max(scale, std::fabs(c));
    enter_tol_ = 1e-11 * scale;
  }

  TransportSolution run() {
    northwest_corner();
    compute_potentials();

    const std::uint64_t pivot_cap =
        1'000'000ULL + 2000ULL * static_cast<std::uint64_t>(m_ + n_);
    const std::uint64_t stall_cap = 4 * (m_ + n_) + 64;
    std::uint64_t pivots = 0;
    std::uint64_t stalled = 0;
    bool bland = false;

    while (true) {
      auto [ei, ej] = find_entering(bland);
      if (ei == SIZE_MAX) break;
      double moved = pivot(ei, ej);
      compute_potentials();
      if (++pivots > pivot_cap)
        throw DegenerateCycling("pivot cap exceeded at " + std::to_string(pivots));
      if (moved > 0.0) {
        stalled = 0;
      } else if (++stalled > stall_cap) {
        bland = true;
      }
    }
    return extract();
  }

private:
  std::size_t cell(std::size_t i, std::size_t j) const { return i * n_ + j; }

  void set_basic(std::size_t i, std::size_t j, double q) {
    basic_[cell(i, j)] = 1;
    alloc_.at(i, j) = q;
    row_basic_[i].push_back(j);
    col_basic_[j].push_back(i);
  }

  void drop_basic(std::size_t i, std::size_t j) {
    basic_[cell(i, j)] = 0;
    alloc_.at(i, j) = 0.0;
    std::erase(row_basic_[i], j);
    std::erase(col_basic_[j], i);
  }

  void northwest_corner() {
    row_basic_.assign(m_, {});
    col_basic_.assign(n_, {});
    std::vector<double> s = inst_.supplies;
    std::vector<double> d = inst_.demands;
    std::size_t i = 0, j = 0;
    while (true) {
      double q = std::min(s[i], d[j]);
      set_basic(i, j, q);
      s[i] -= q;
      d[j] -= q;
      if (i == m_ - 1 && j == n_ - 1) break;
      // Advance exactly one pointer per step so the basis keeps m+n-1 cells
      // even through degenerate exhaustion.
      if (s[i] <= 0.0 && i + 1 < m_)
        ++i;
      else if (j + 1 < n_)
        ++j;
      else
        ++i;
    }
  }

  // Potentials from the basis tree: u_i + v_j = c_ij on basic cells, u_0 = 0.
  void compute_potentials() {
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    std::vector<char> row_done(m_, 0), col_done(n_, 0);
    std::queue<std::size_t> queue;  // rows: [0,m), cols: m + j
    row_done[0] = 1;
    queue.push(0);
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop();
      if (node < m_) {
        for (std::size_t j : row_basic_[node]) {
          if (col_done[j]) continue;
          v_[j] = inst_.cost.at(node, j) - u_[node];
          col_done[j] = 1;
          queue.push(m_ + j);
        }
      } else {
        std::size_t j = node - m_;
        for (std::size_t i : col_basic_[j]) {
          if (row_done[i]) continue;
          u_[i] = inst_.cost.at(i, j) - v_[j];
          row_done[i] = 1;
          queue.push(i);
        }
      }
    }
  }

  std::pair<std::size_t, std::size_t> find_entering(bool bland) const {
    double best = -enter_tol_;
    std::size_t bi = SIZE_MAX, bj = SIZE_MAX;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic_[cell(i, j)]) continue;
        double reduced = inst_.cost.at(i, j) - u_[i] - v_[j];
        if (reduced < best) {
          best = reduced;
          bi = i;
          bj = j;
          if (bland) return {bi, bj};
        }
      }
    }
    return {bi, bj};
  }

  // Unique basis-tree path from row ei to column ej; with the entering cell
  // it closes the pivot cycle. Returns the amount of mass moved.
  double pivot(std::size_t ei, std::size_t ej) {
    const std::size_t nodes = m_ + n_;
    std::vector<std::size_t> parent(nodes, SIZE_MAX);
    std::vector<char> seen(nodes, 0);
    std::queue<std::size_t> queue;
    seen[ei] = 1;
    queue.push(ei);
    while (!queue.empty() && !seen[m_ + ej]) {
      std::size_t node = queue.front();
      queue.pop();
      if (node < m_) {
        for (std::size_t j : row_basic_[node]) {
          if (seen[m_ + j]) continue;
          seen[m_ + j] = 1;
          parent[m_ + j] = node;
          queue.push(m_ + j);
        }
      } else {
        for (std::size_t i : col_basic_[node - m_]) {
          if (seen[i]) continue;
          seen[i] = 1;
          parent[i] = node;
          queue.push(i);
        }
      }
    }
    if (!seen[m_ + ej])
      throw DegenerateCycling("basis lost its spanning-tree structure");

    // Path cells from the ej side back to ei; signs alternate starting at
    // minus (the entering cell is the plus closing the cycle).
    std::vector<std::pair<std::size_t, std::size_t>> minus, plus;
    std::size_t node = m_ + ej;
    bool negative = true;
    while (node != ei) {
      std::size_t up = parent[node];
      std::size_t i = node < m_ ? node : up;
      std::size_t j = node < m_ ? up - m_ : node - m_;
      (negative ? minus : plus).emplace_back(i, j);
      negative = !negative;
      node = up;
    }

    double theta = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> leaving{SIZE_MAX, SIZE_MAX};
    for (auto [i, j] : minus) {
      double a = alloc_.at(i, j);
      if (a < theta || (a == theta && std::make_pair(i, j) < leaving)) {
        theta = a;
        leaving = {i, j};
      }
    }

    for (auto [i, j] : plus) alloc_.at(i, j) += theta;
    for (auto [i, j] : minus) alloc_.at(i, j) = std::max(0.0, alloc_.at(i, j) - theta);
    drop_basic(leaving.first, leaving.second);
    set_basic(ei, ej, theta);
    return theta;
  }

  TransportSolution extract() const {
    TransportSolution sol;
    sol.plan = Matrix(m_, n_, 0.0);
    double value = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        double q = alloc_.at(i, j);
        if (q > 0.0) {
          sol.plan.at(i, j) = q;
          value += q * inst_.cost.at(i, j);
        }
      }
    }
    sol.value = value;
    sol.dual_u = u_;
    sol.dual_v = v_;
    return sol;
  }

  const TransportInstance& inst_;
  std::size_t m_, n_;
  Matrix alloc_;
  std::vector<char> basic_;
  std::vector<std::vector<std::size_t>> row_basic_, col_basic_;
  std::vector<double> u_, v_;
  double enter_tol_ = 0.0;
};

}  // namespace

TransportSolution solve_transportation(const TransportInstance& inst) {
  const std::size_t m = inst.supplies.size();
  const std::size_t n = inst.demands.size();
  if (inst.cost.rows() != m || inst.cost.cols() != n)
    throw InvalidParams("cost matrix shape does not match supplies/demands");
  for (double s : inst.supplies)
    if (s < 0.0) throw Unbalanced("negative supply");
  for (double d : inst.demands)
    if (d < 0.0) throw Unbalanced("negative demand");

  double total_s = inst.total_supply();
  double total_d = inst.total_demand();
  double scale = std::max({1.0, total_s, total_d});
  if (std::fabs(total_s - total_d) > 1e-12 * scale)
    throw Unbalanced("supply " + std::to_string(total_s) + " vs demand " +
                     std::to_string(total_d));

  if (m == 0 || n == 0) {
    if (total_s > 0.0 || total_d > 0.0)
      throw Unbalanced("mass present but one side has no points");
    TransportSolution sol;
    sol.plan = Matrix(m, n, 0.0);
    sol.dual_u.assign(m, 0.0);
    sol.dual_v.assign(n, 0.0);
    return sol;
  }

  if (total_s == 0.0) {
    // Nothing moves; pick duals that stay feasible for negative costs.
    TransportSolution sol;
    sol.plan = Matrix(m, n, 0.0);
    sol.dual_u.assign(m, 0.0);
    sol.dual_v.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      double lo = inst.cost.at(0, j);
      for (std::size_t i = 1; i < m; ++i) lo = std::min(lo, inst.cost.at(i, j));
      sol.dual_v[j] = lo;
    }
    return sol;
  }

  TransportationSimplex simplex(inst);
  TransportSolution sol = simplex.run();
  SolveCertificate cert = certify(inst, sol);
  if (!cert.ok(1e-7))
    throw DegenerateCycling("optimality certificate failed: dual violation " +
                            std::to_string(cert.dual_violation));
  return sol;
}

namespace {

struct ExtendedCostBase {
  std::vector<double> w1;  // per mu support
  std::vector<double> w2;  // per nu support
  Matrix pair_dist;        // mu support x nu support graph distances
};

ExtendedCostBase cost_base(const PhysicalGraph& g, NodeId root,
                           const UstParams& params, double weight_a1,
                           const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (weight_a1 < 0.0 || weight_a1 > params.b)
    throw InvalidWeightSlope("a1 = " + std::to_string(weight_a1) +
                             " outside [0, b = " + std::to_string(params.b) + "]");
  if ((!mu.empty() && mu.max_node() >= g.node_count()) ||
      (!nu.empty() && nu.max_node() >= g.node_count()))
    throw SupportOffGraph("measure support exceeds node count");

  ExtendedCostBase base;
  std::vector<double> root_dist = dijkstra_distances(g, root);
  base.w1.reserve(mu.support_size());
  for (const MassEntry& e : mu.entries())
    base.w1.push_back(weight_a1 * root_dist[e.node] + params.w1_root);
  base.w2.reserve(nu.support_size());
  for (const MassEntry& e : nu.entries())
    base.w2.push_back(weight_a1 * root_dist[e.node] + params.w2_root);

  base.pair_dist = Matrix(mu.support_size(), nu.support_size(), 0.0);
  for (std::size_t i = 0; i < mu.support_size(); ++i) {
    std::vector<double> row = dijkstra_distances(g, mu.entries()[i].node);
    for (std::size_t j = 0; j < nu.support_size(); ++j)
      base.pair_dist.at(i, j) = row[nu.entries()[j].node];
  }
  return base;
}

TransportInstance assemble(const ExtendedCostBase& base, const UstParams& params,
                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           double lambda) {
  const std::size_t km = mu.support_size();
  const std::size_t kn = nu.support_size();
  TransportInstance inst;
  inst.supply_tags.reserve(km + 1);
  inst.supplies.reserve(km + 1);
  for (const MassEntry& e : mu.entries()) {
    inst.supply_tags.push_back(e.node);
    inst.supplies.push_back(e.mass);
  }
  inst.supply_tags.push_back(kAuxPoint);
  inst.supplies.push_back(nu.total_mass());

  inst.demand_tags.reserve(kn + 1);
  inst.demands.reserve(kn + 1);
  for (const MassEntry& e : nu.entries()) {
    inst.demand_tags.push_back(e.node);
    inst.demands.push_back(e.mass);
  }
  inst.demand_tags.push_back(kAuxPoint);
  inst.demands.push_back(mu.total_mass());

  inst.cost = Matrix(km + 1, kn + 1, 0.0);
  for (std::size_t i = 0; i < km; ++i) {
    for (std::size_t j = 0; j < kn; ++j)
      inst.cost.at(i, j) = params.b * (base.pair_dist.at(i, j) - lambda);
    inst.cost.at(i, kn) = base.w1[i];
  }
  for (std::size_t j = 0; j < kn; ++j) inst.cost.at(km, j) = base.w2[j];
  inst.cost.at(km, kn) = 0.0;
  return inst;
}

}  // namespace

TransportInstance extend_problem(const PhysicalGraph& g, NodeId root,
                                 const UstParams& params, double weight_a1,
                                 const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, double lambda) {
  return assemble(cost_base(g, root, params, weight_a1, mu, nu), params, mu, nu,
                  lambda);
}

TransportInstance extend_problem(const PhysicalGraph& g, NodeId root,
                                 const UstParams& params, double weight_a1,
                                 const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu) {
  return extend_problem(g, root, params, weight_a1, mu, nu, params.lambda);
}

double et_lambda(const PhysicalGraph& g, NodeId root, const UstParams& params,
                 double weight_a1, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu, double lambda) {
  return solve_transportation(extend_problem(g, root, params, weight_a1, mu, nu, lambda))
      .value;
}

double et_lambda(const PhysicalGraph& g, NodeId root, const UstParams& params,
                 double weight_a1, const DiscreteMeasure& mu,
                 const DiscreteMeasure& nu) {
  return et_lambda(g, root, params, weight_a1, mu, nu, params.lambda);
}

TransportInstance wasserstein_instance(const PhysicalGraph& g, double p,
                                       const DiscreteMeasure& mu,
                                       const DiscreteMeasure& nu) {
  if (!(p >= 1.0) || p == kOrderInf)
    throw InvalidParams("wasserstein order must be finite and >= 1");
  double scale = std::max({1.0, mu.total_mass(), nu.total_mass()});
  if (std::fabs(mu.total_mass() - nu.total_mass()) > 1e-9 * scale)
    throw UnbalancedMasses("mu(G) = " + std::to_string(mu.total_mass()) +
                           " vs nu(G) = " + std::to_string(nu.total_mass()));
  if ((!mu.empty() && mu.max_node() >= g.node_count()) ||
      (!nu.empty() && nu.max_node() >= g.node_count()))
    throw SupportOffGraph("measure support exceeds node count");

  TransportInstance inst;
  for (const MassEntry& e : mu.entries()) {
    inst.supply_tags.push_back(e.node);
    inst.supplies.push_back(e.mass);
  }
  for (const MassEntry& e : nu.entries()) {
    inst.demand_tags.push_back(e.node);
    inst.demands.push_back(e.mass);
  }
  inst.cost = Matrix(mu.support_size(), nu.support_size(), 0.0);
  for (std::size_t i = 0; i < mu.support_size(); ++i) {
    std::vector<double> row = dijkstra_distances(g, mu.entries()[i].node);
    for (std::size_t j = 0; j < nu.support_size(); ++j) {
      double d = row[nu.entries()[j].node];
      inst.cost.at(i, j) = p == 1.0 ? d : std::pow(d, p);
    }
  }
  return inst;
}

double wasserstein(const PhysicalGraph& g, double p, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu) {
  TransportInstance inst = wasserstein_instance(g, p, mu, nu);
  double value = std::max(0.0, solve_transportation(inst).value);
  return p == 1.0 ? value : std::pow(value, 1.0 / p);
}

std::vector<SweepPoint> mass_sweep(const PhysicalGraph& g, NodeId root,
                                   const UstParams& params, double weight_a1,
                                   const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu,
                                   const std::vector<double>& lambdas) {
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (lambdas[i] < lambdas[i - 1])
      throw InvalidParams("lambda grid must be ascending");

  ExtendedCostBase base = cost_base(g, root, params, weight_a1, mu, nu);
  std::vector<SweepPoint> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    TransportInstance inst = assemble(base, params, mu, nu, lambda);
    TransportSolution sol = solve_transportation(inst);
    out.push_back({lambda, sol.real_mass(inst), sol.value});
  }
  return out;
}

MassTargetResult realize_mass_target(const std::vector<SweepPoint>& sweep,
                                     double b, double target_mass) {
  if (sweep.empty()) throw InvalidParams("empty sweep");
  MassTargetResult res;
  std::size_t lo = 0, hi = sweep.size() - 1;
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    if (sweep[k].plan_mass <= target_mass) lo = k;
  }
  for (std::size_t k = sweep.size(); k-- > 0;) {
    if (sweep[k].plan_mass >= target_mass) hi = k;
  }
  res.lambda_lo = sweep[lo].lambda;
  res.lambda_hi = sweep[hi].lambda;
  const SweepPoint& pick =
      std::fabs(sweep[lo].plan_mass - target_mass) <=
              std::fabs(sweep[hi].plan_mass - target_mass)
          ? sweep[lo]
          : sweep[hi];
  res.value = pick.et_value + pick.lambda * b * target_mass;
  return res;
}

}  // namespace ust
