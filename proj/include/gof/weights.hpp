#pragma once

#include <vector>

#include "gof/covariance.hpp"

namespace gof {

// A weight vector for the generalized statistic R_n^2(w) = sum w_i Y_i,
// carrying the value of the normalization functional sum w_i mu_i(1-mu_i).
// optimal_weights() fixes this at c = 1 (the constraint constant is a gauge).
struct WeightVector {
  std::vector<double> w;
  double normalization = 1.0;

  int n() const { return static_cast<int>(w.size()); }
};

// delta is the focal direction Sigma w, scaled to max entry 1; zeta is the
// variance-adjusted direction zeta_i = delta_i / (mu_i(1-mu_i)).
struct FocalDirection {
  std::vector<double> delta;
  std::vector<double> zeta;
};

// Minimum-variance weights under the constraint sum w_i mu_i(1-mu_i) = 1:
// w proportional to Sigma^{-1} m with m_i = mu_i(1-mu_i), computed through a
// symmetric indefinite factorization (never an explicit inverse).  A condition
// estimate above 1/eps^(1/2)-ish territory, a failed factorization, or a
// non-positive constraint product raises "ill_conditioned_sigma".
WeightVector optimal_weights(int n, const CovarianceMatrix& covariance);

// Anderson-Darling weights w_i = 1/(mu_i(1-mu_i)), with the matching value of
// the normalization functional (= n here).
WeightVector ad_weights(int n);

FocalDirection focal_direction(const WeightVector& w,
                               const CovarianceMatrix& covariance);

}  // namespace gof
