#include <cmath>
#include <chrono>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "ust/ust.hpp"

using namespace ust;

namespace {

PhysicalGraph path3() { return build_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}}); }

UstParams defaults() { return UstParams{}; }

// Independent oracle: for each tree edge, re-walk every support's root path.
EdgeMassProfile naive_profile(const RootedPreprocess& pre, const DiscreteMeasure& mu) {
  EdgeMassProfile prof;
  prof.total_mass = mu.total_mass();
  prof.values.assign(pre.tree_edges.size(), 0.0);
  for (std::size_t pos = 0; pos < pre.tree_edges.size(); ++pos) {
    EdgeId target = pre.tree_edges[pos];
    for (const MassEntry& e : mu.entries()) {
      for (NodeId v = e.node; v != pre.root; v = pre.parent_node[v]) {
        if (pre.parent_edge[v] == target) {
          prof.values[pos] += e.mass;
          break;
        }
      }
    }
  }
  return prof;
}

}  // namespace

TEST_CASE("theta picks the heavier side's root weight") {
  UstParams p;
  p.b = 1.0;
  p.lambda = 1.0;
  p.alpha = 0.0;
  p.w1_root = 1.0;
  p.w2_root = 1.0;
  CHECK(theta(p, 2.0, 1.0) == 1.5);
  CHECK(theta(p, 1.0, 2.0) == 1.5);

  p.w1_root = 0.0;
  p.w2_root = 3.0;
  CHECK(theta(p, 1.0, 2.0) == 3.5);
}

TEST_CASE("edge cumulative masses on the path") {
  RootedPreprocess pre = shortest_path_tree(path3(), 0);
  auto at_edge = [&](const EdgeMassProfile& prof, EdgeId e) {
    return prof.values[pre.tree_pos[e]];
  };

  EdgeMassProfile d1 = edge_cumulative_masses(pre, dirac(1));
  CHECK(at_edge(d1, 0) == 1.0);  // edge 0-1
  CHECK(at_edge(d1, 1) == 0.0);  // edge 1-2

  EdgeMassProfile d2 = edge_cumulative_masses(pre, dirac(2));
  CHECK(at_edge(d2, 0) == 1.0);
  CHECK(at_edge(d2, 1) == 1.0);

  EdgeMassProfile droot = edge_cumulative_masses(pre, dirac(0));
  CHECK(droot.values == std::vector<double>{0.0, 0.0});

  CHECK_THROWS_AS(edge_cumulative_masses(pre, dirac(9)), SupportOffGraph);
}

TEST_CASE("golden closed-form values on the path") {
  RootedPreprocess pre = shortest_path_tree(path3(), 0);
  UstParams p = defaults();

  CHECK(ust_distance(pre, p, dirac(1), dirac(2)) == doctest::Approx(2.0).epsilon(1e-13));

  p.p = 2.0;
  CHECK(ust_distance(pre, p, dirac(1), dirac(2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  p.p = 1.0;
  CHECK(ust_distance(pre, p, dirac(1, 2.0), dirac(2)) ==
        doctest::Approx(4.5).epsilon(1e-13));

  DiscreteMeasure mu = new_measure({{0, 0.5}, {2, 1.5}});
  CHECK(ust_distance(pre, p, mu, mu) == 0.0);
}

TEST_CASE("sup-order distance takes the max over omega-positive edges") {
  RootedPreprocess pre = shortest_path_tree(path3(), 0);
  UstParams p = defaults();
  p.p = kOrderInf;
  CHECK(ust_distance(pre, p, dirac(1), dirac(2)) == 1.0);

  p.omega = {1.0, 0.0};  // silence edge 1-2
  CHECK(ust_distance(pre, p, dirac(1), dirac(2)) == 0.0);
}

TEST_CASE("parameter validation") {
  RootedPreprocess pre = shortest_path_tree(path3(), 0);
  UstParams p = defaults();

  p.alpha = 2.0;  // above (b*lambda + w1 + w2)/2 = 1.5
  CHECK_THROWS_AS(validate_params(p, pre.edge_count), InvalidParams);

  p = defaults();
  p.p = 0.5;
  CHECK_THROWS_AS(validate_params(p, pre.edge_count), InvalidParams);

  p = defaults();
  p.b = -1.0;
  CHECK_THROWS_AS(validate_params(p, pre.edge_count), InvalidParams);

  p = defaults();
  p.omega = {1.0};  // two edges in the graph
  CHECK_THROWS_AS(validate_params(p, pre.edge_count), InvalidParams);

  p = defaults();
  p.alpha = 1.5;  // boundary is admissible
  CHECK_NOTHROW(validate_params(p, pre.edge_count));
}

TEST_CASE("profiles agree with the naive per-edge recomputation") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    auto [g, root] = testutil::random_rooted_graph(rng, 50);
    RootedPreprocess pre = shortest_path_tree(g, root);
    DiscreteMeasure mu = testutil::random_measure(rng, g.node_count(), 10);
    EdgeMassProfile fast = edge_cumulative_masses(pre, mu);
    EdgeMassProfile slow = naive_profile(pre, mu);
    CHECK(fast.values == slow.values);  // exact on the dyadic grid

    // cumulative masses grow along root paths
    for (std::size_t i = 0; i < fast.values.size(); ++i)
      if (pre.fold_to[i] != kNoPos)
        CHECK(fast.values[pre.fold_to[i]] >= fast.values[i]);
  }
}

TEST_CASE("profile path and direct path agree") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    auto [g, root] = testutil::random_rooted_graph(rng, 30);
    RootedPreprocess pre = shortest_path_tree(g, root);
    DiscreteMeasure mu = testutil::random_measure(rng, g.node_count(), 8);
    DiscreteMeasure nu = testutil::random_measure(rng, g.node_count(), 8);
    for (double order : {1.0, 1.5, 2.0, kOrderInf}) {
      UstParams p = defaults();
      p.p = order;
      double direct = ust_distance(pre, p, mu, nu);
      double via_profiles = ust_distance_from_profiles(
          pre, p, edge_cumulative_masses(pre, mu), edge_cumulative_masses(pre, nu));
      CHECK(direct == doctest::Approx(via_profiles).epsilon(1e-13));
    }
  }
}

TEST_CASE("metric properties on random graphs") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 60; ++it) {
    auto [g, root] = testutil::random_rooted_graph(rng, 25);
    RootedPreprocess pre = shortest_path_tree(g, root);
    DiscreteMeasure mu = testutil::random_measure(rng, g.node_count(), 6);
    DiscreteMeasure nu = testutil::random_measure(rng, g.node_count(), 6);
    DiscreteMeasure sigma = testutil::random_measure(rng, g.node_count(), 6);

    for (double order : {1.0, 2.0}) {
      UstParams p = defaults();
      p.p = order;

      double duv = ust_distance(pre, p, mu, nu);
      double dus = ust_distance(pre, p, mu, sigma);
      double dsv = ust_distance(pre, p, sigma, nu);

      CHECK(duv >= 0.0);
      CHECK(duv == ust_distance(pre, p, nu, mu));           // symmetry, exact
      CHECK(duv <= dus + dsv + 1e-9);                        // triangle

      // mass translation invariance, exact on the dyadic grid
      CHECK(ust_distance(pre, p, add(mu, sigma), add(nu, sigma)) ==
            doctest::Approx(duv).epsilon(1e-13));

      // geodesic midpoint
      DiscreteMeasure mid = add(scale(mu, 0.5), scale(nu, 0.5));
      CHECK(ust_distance(pre, p, mu, mid) == doctest::Approx(duv / 2).epsilon(1e-11));
      CHECK(ust_distance(pre, p, nu, mid) == doctest::Approx(duv / 2).epsilon(1e-11));
    }
  }
}

TEST_CASE("order comparison inequality") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 60; ++it) {
    auto [g, root] = testutil::random_rooted_graph(rng, 20);
    RootedPreprocess pre = shortest_path_tree(g, root);
    DiscreteMeasure mu = testutil::random_measure(rng, g.node_count(), 6);
    DiscreteMeasure nu = testutil::random_measure(rng, g.node_count(), 6);

    double omega_total = 0.0;
    for (const Edge& e : g.edges()) omega_total += e.weight;

    for (auto [lo, hi] : std::vector<std::pair<double, double>>{
             {1.0, 2.0}, {1.0, kOrderInf}, {2.0, kOrderInf}}) {
      UstParams pl = defaults();
      pl.p = lo;
      UstParams ph = defaults();
      ph.p = hi;
      double th = theta(pl, mu.total_mass(), nu.total_mass());
      double gap = th * std::fabs(mu.total_mass() - nu.total_mass());
      double lhs = ust_distance(pre, pl, mu, nu) - gap;
      double rhs = ust_distance(pre, ph, mu, nu) - gap;
      double expo = 1.0 / lo - (hi == kOrderInf ? 0.0 : 1.0 / hi);
      CHECK(lhs <= std::pow(omega_total, expo) * rhs + 1e-9);
    }
  }
}

TEST_CASE("balanced pairs ignore alpha, lambda and the root weights") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 30; ++it) {
    auto [g, root] = testutil::random_rooted_graph(rng, 20);
    RootedPreprocess pre = shortest_path_tree(g, root);
    DiscreteMeasure mu = testutil::random_measure(rng, g.node_count(), 6);
    DiscreteMeasure nu =
        testutil::random_balanced_partner(rng, g.node_count(), 6, mu);

    UstParams base = defaults();
    double reference = ust_distance(pre, base, mu, nu);
    for (int trial = 0; trial < 5; ++trial) {
      UstParams p = base;
      p.lambda = testutil::uniform_real(rng, 0.0, 3.0);
      p.w1_root = testutil::uniform_real(rng, 0.0, 2.0);
      p.w2_root = testutil::uniform_real(rng, 0.0, 2.0);
      p.alpha = testutil::uniform_real(
          rng, 0.0, 0.5 * (p.b * p.lambda + p.w1_root + p.w2_root));
      CHECK(ust_distance(pre, p, mu, nu) == reference);  // bitwise: theta term is 0
    }
  }
}

TEST_CASE("pairwise matrix") {
  RootedPreprocess pre = shortest_path_tree(path3(), 0);
  UstParams p = defaults();

  Matrix single = pairwise_matrix(pre, p, {dirac(1)});
  CHECK(single.rows() == 1);
  CHECK(single.at(0, 0) == 0.0);

  Matrix two = pairwise_matrix(pre, p, {dirac(1), dirac(2)});
  CHECK(two.at(0, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(two.at(1, 0) == two.at(0, 1));
  CHECK(two.at(0, 0) == 0.0);

  DiscreteMeasure mid = add(scale(dirac(1), 0.5), scale(dirac(2), 0.5));
  Matrix three = pairwise_matrix(pre, p, {dirac(1), dirac(2), mid});
  CHECK(three.at(0, 2) == doctest::Approx(three.at(0, 1) / 2).epsilon(1e-12));
  CHECK(three.at(1, 2) == doctest::Approx(three.at(0, 1) / 2).epsilon(1e-12));

  UstParams skew = defaults();
  skew.w2_root = 2.0;
  CHECK_THROWS_AS(pairwise_matrix(pre, skew, {dirac(1), dirac(2)}), InvalidParams);
}

TEST_CASE("touched edge count follows the union of support paths") {
  RootedPreprocess pre = shortest_path_tree(path3(), 0);
  CHECK(touched_edge_count(pre, dirac(1), dirac(2)) == 2);
  CHECK(touched_edge_count(pre, dirac(1), dirac(1)) == 1);
  CHECK(touched_edge_count(pre, dirac(0), dirac(0)) == 0);
}

TEST_CASE("pair evaluation time is linear in the touched edges") {
  // Long path graph; a dirac at depth d touches exactly d edges.
  const NodeId n = 30'000;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (NodeId v = 1; v < n; ++v)
    edges.push_back({static_cast<NodeId>(v - 1), v, 1.0});
  PhysicalGraph g = build_graph(n, edges);
  RootedPreprocess pre = shortest_path_tree(g, 0);
  UstParams params;

  const std::vector<NodeId> depths{1'000, 4'000, 8'000, 16'000, 29'999};
  const int reps = 60;

  double best_r2 = 0.0;
  for (int attempt = 0; attempt < 3 && best_r2 <= 0.95; ++attempt) {
    std::vector<double> xs, ys;
    for (NodeId d : depths) {
      DiscreteMeasure mu = dirac(d);
      DiscreteMeasure nu = dirac(0);  // root: contributes nothing
      volatile double sink = 0.0;
      double best_ms = std::numeric_limits<double>::infinity();
      for (int trial = 0; trial < 5; ++trial) {
        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r)
          sink = sink + ust_distance(pre, params, mu, nu);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        best_ms = std::min(best_ms, ms);
      }
      xs.push_back(static_cast<double>(touched_edge_count(pre, mu, nu)));
      ys.push_back(best_ms / reps);
    }

    // least squares with intercept
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    auto m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
      syy += ys[i] * ys[i];
    }
    double cov = sxy - sx * sy / m;
    double varx = sxx - sx * sx / m;
    double vary = syy - sy * sy / m;
    double r2 = vary > 0 ? cov * cov / (varx * vary) : 1.0;
    best_r2 = std::max(best_r2, r2);
  }
  CHECK(best_r2 > 0.95);
}
