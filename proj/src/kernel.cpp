#include "ust/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace ust {

GramMatrix gram(const Matrix& dists, double t) {
  if (!(t > 0.0)) throw NonPositiveT("t = " + std::to_string(t));
  const std::size_t n = dists.rows();
  if (dists.cols() != n) throw NonSymmetricInput("distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (dists.at(i, i) != 0.0)
      throw NonSymmetricInput("nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dists.at(i, j) != dists.at(j, i))
        throw NonSymmetricInput("asymmetry at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
      if (dists.at(i, j) < 0.0)
        throw NonSymmetricInput("negative distance at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
    }
  }

  GramMatrix out;
  out.t = t;
  out.values = Matrix(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.values.at(i, j) = std::exp(-t * dists.at(i, j));
  return out;
}

double min_eigenvalue(const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd sym(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      sym(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double min_eigenvalue(const GramMatrix& m) { return min_eigenvalue(m.values); }

double neg_def_violation(const Matrix& dists, std::uint32_t trials,
                         std::uint64_t seed) {
  const std::size_t n = dists.rows();
  if (n < 2 || dists.cols() != n)
    throw InvalidParams("need a square matrix over >= 2 measures");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = -std::numeric_limits<double>::infinity();
  std::vector<double> c(n);
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      c[i] = gauss(rng);
      sum += c[i];
    }
    c[n - 1] = -sum;  // zero-sum coefficients
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) quad += c[i] * c[j] * dists.at(i, j);
    worst = std::max(worst, quad);
  }
  return worst;
}

double neg_def_violation(const RootedPreprocess& pre, const UstParams& params,
                         const std::vector<DiscreteMeasure>& measures,
                         std::uint32_t trials, std::uint64_t seed) {
  return neg_def_violation(pairwise_matrix(pre, params, measures), trials, seed);
}

std::vector<double> bandwidth_grid(std::vector<double> distance_sample) {
  std::vector<double> ts;
  if (distance_sample.empty()) return ts;
  std::sort(distance_sample.begin(), distance_sample.end());
  const double last = static_cast<double>(distance_sample.size() - 1);
  for (int s = 10; s <= 90; s += 10) {
    double pos = last * (s / 100.0);
    auto lo = static_cast<std::size_t>(pos);
    auto hi = std::min(lo + 1, distance_sample.size() - 1);
    double frac = pos - static_cast<double>(lo);
    double q = distance_sample[lo] * (1.0 - frac) + distance_sample[hi] * frac;
    for (double mult : {1.0, 2.0, 5.0}) {
      double inv_t = mult * q;
      if (inv_t > 0.0) ts.push_back(1.0 / inv_t);
    }
  }
  return ts;
}

}  // namespace ust
