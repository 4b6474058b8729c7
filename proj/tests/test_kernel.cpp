#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "ust/kernel.hpp"

using namespace ust;

TEST_CASE("gram basics") {
  Matrix d(2, 2, 0.0);
  d.at(0, 1) = d.at(1, 0) = 2.0;

  GramMatrix k = gram(d, 0.5);
  CHECK(k.values.at(0, 0) == 1.0);
  CHECK(k.values.at(1, 1) == 1.0);
  CHECK(k.values.at(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  CHECK_THROWS_AS(gram(d, 0.0), NonPositiveT);
  CHECK_THROWS_AS(gram(d, -1.0), NonPositiveT);

  Matrix bad = d;
  bad.at(0, 1) = 3.0;
  CHECK_THROWS_AS(gram(bad, 1.0), NonSymmetricInput);

  Matrix diag = d;
  diag.at(0, 0) = 0.5;
  CHECK_THROWS_AS(gram(diag, 1.0), NonSymmetricInput);
}

TEST_CASE("infinite divisibility identity") {
  std::mt19937_64 rng(61);
  auto [g, root] = testutil::random_rooted_graph(rng, 15);
  RootedPreprocess pre = shortest_path_tree(g, root);
  std::vector<DiscreteMeasure> ms;
  for (int i = 0; i < 6; ++i)
    ms.push_back(testutil::random_measure(rng, g.node_count(), 4));

  UstParams params;
  Matrix d = pairwise_matrix(pre, params, ms);
  for (int i : {1, 2, 5}) {
    GramMatrix whole = gram(d, 1.0);
    GramMatrix part = gram(d, 1.0 / i);
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t c = 0; c < d.cols(); ++c) {
        double powed = std::pow(part.values.at(r, c), i);
        CHECK(powed == doctest::Approx(whole.values.at(r, c)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("min eigenvalue on known matrices") {
  Matrix eye(3, 3, 0.0);
  for (int i = 0; i < 3; ++i) eye.at(i, i) = 1.0;
  CHECK(min_eigenvalue(eye) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix ones(2, 2, 1.0);
  CHECK(min_eigenvalue(ones) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gram matrices of the transport distance stay positive semidefinite") {
  std::mt19937_64 rng(67);
  for (int it = 0; it < 8; ++it) {
    auto [g, root] = testutil::random_rooted_graph(rng, 20);
    RootedPreprocess pre = shortest_path_tree(g, root);
    std::vector<DiscreteMeasure> ms;
    auto count = static_cast<std::size_t>(testutil::uniform_int(rng, 3, 10));
    for (std::size_t i = 0; i < count; ++i)
      ms.push_back(testutil::random_measure(rng, g.node_count(), 4));

    for (double p : {1.0, 1.5, 2.0}) {
      UstParams params;
      params.p = p;
      Matrix d = pairwise_matrix(pre, params, ms);
      for (double t : {0.1, 1.0, 10.0})
        CHECK(min_eigenvalue(gram(d, t)) >= -1e-8);
    }
  }
}

TEST_CASE("negative definiteness probe") {
  std::mt19937_64 rng(71);
  auto [g, root] = testutil::random_rooted_graph(rng, 15);
  RootedPreprocess pre = shortest_path_tree(g, root);

  // two measures force sign: sum = 2 c0 c1 d(0,1) with c1 = -c0
  std::vector<DiscreteMeasure> two = {
      testutil::random_measure(rng, g.node_count(), 4),
      testutil::random_measure(rng, g.node_count(), 4)};
  UstParams params;
  CHECK(neg_def_violation(pre, params, two, 16, 5) <= 0.0);

  std::vector<DiscreteMeasure> same = {two[0], two[0], two[0]};
  CHECK(neg_def_violation(pre, params, same, 16, 5) == 0.0);

  std::vector<DiscreteMeasure> ms;
  for (int i = 0; i < 8; ++i)
    ms.push_back(testutil::random_measure(rng, g.node_count(), 4));
  params.p = 2.0;
  CHECK(neg_def_violation(pre, params, ms, 64, 9) <= 1e-8);
}

TEST_CASE("bandwidth grid follows the quantile protocol") {
  std::vector<double> sample;
  for (int i = 1; i <= 100; ++i) sample.push_back(static_cast<double>(i));
  std::vector<double> ts = bandwidth_grid(sample);
  REQUIRE(ts.size() == 27);
  for (double t : ts) CHECK(t > 0.0);
  // s = 10% quantile of 1..100 is ~10.9; 1/t multiples 1, 2, 5
  CHECK(ts[0] == doctest::Approx(1.0 / 10.9).epsilon(1e-12));
  CHECK(ts[1] == doctest::Approx(1.0 / 21.8).epsilon(1e-12));
  CHECK(ts[2] == doctest::Approx(1.0 / 54.5).epsilon(1e-12));

  CHECK(bandwidth_grid({}).empty());
  CHECK(bandwidth_grid({0.0, 0.0}).empty());
}
