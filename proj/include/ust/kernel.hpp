#pragma once

#include <cstdint>
#include <vector>

#include "ust/matrix.hpp"
#include "ust/measure.hpp"
#include "ust/ust.hpp"

namespace ust {

// Gram matrix of the kernel exp(-t * d) over a distance matrix.
struct GramMatrix {
  Matrix values;
  double t = 0.0;
};

// Elementwise exp(-t * d). Validates symmetry, zero diagonal and
// nonnegativity of the distances; throws NonSymmetricInput / NonPositiveT.
GramMatrix gram(const Matrix& dists, double t);

// Smallest eigenvalue of a symmetric matrix, the PSD certificate used by
// the kernel checks.
double min_eigenvalue(const Matrix& m);
double min_eigenvalue(const GramMatrix& m);

// Max over seeded random zero-sum coefficient vectors of
// sum_ij c_i c_j d(mu_i, mu_j); nonpositive (up to tolerance) exactly when
// the distance is negative definite on the family.
double neg_def_violation(const RootedPreprocess& pre, const UstParams& params,
                         const std::vector<DiscreteMeasure>& measures,
                         std::uint32_t trials, std::uint64_t seed);
double neg_def_violation(const Matrix& dists, std::uint32_t trials,
                         std::uint64_t seed);

// Bandwidth grid mirroring the quantile protocol: 1/t drawn from
// {q_s, 2 q_s, 5 q_s} for s = 10%, 20%, ..., 90% of the sampled distances.
// Zero quantiles are skipped.
std::vector<double> bandwidth_grid(std::vector<double> distance_sample);

}  // namespace ust
