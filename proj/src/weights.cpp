#include "gof/weights.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "gof/error.hpp"
#include "gof/special.hpp"

namespace gof {

WeightVector optimal_weights(int n, const CovarianceMatrix& covariance) {
  if (covariance.kind != CovKind::Y_summands || covariance.n != n ||
      covariance.m.rows() != n) {
    throw Error("ill_conditioned_sigma",
                "optimal_weights expects a Y-summand covariance of size n");
  }
  Eigen::VectorXd m(n);
  for (int i = 1; i <= n; ++i) {
    const double mu = i / (n + 1.0);
    m(i - 1) = mu * (1.0 - mu);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(covariance.m);
  if (ldlt.info() != Eigen::Success) {
    throw Error("ill_conditioned_sigma", "LDLT factorization failed at n=" +
                                             std::to_string(n));
  }
  // Cheap condition estimate from the factor diagonal: the quadratic form is
  // a variance matrix, so a huge spread (or a non-positive pivot) signals an
  // unusable system rather than a merely awkward one.
  const Eigen::VectorXd d = ldlt.vectorD();
  const double dmax = d.maxCoeff();
  const double dmin = d.minCoeff();
  if (!(dmin > 0.0) || dmax / dmin > 1e14) {
    throw Error("ill_conditioned_sigma",
                "covariance condition estimate " +
                    std::to_string(dmin > 0.0 ? dmax / dmin : -1.0) +
                    " beyond solvable range at n=" + std::to_string(n));
  }
  Eigen::VectorXd x = ldlt.solve(m);
  const double scale = x.dot(m);  // = m' Sigma^{-1} m > 0 for PD Sigma
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error("ill_conditioned_sigma",
                "constraint product non-positive at n=" + std::to_string(n));
  }
  WeightVector out;
  out.normalization = 1.0;
  out.w.resize(n);
  for (int i = 0; i < n; ++i) out.w[i] = x(i) / scale;
  return out;
}

WeightVector ad_weights(int n) {
  WeightVector out;
  out.w.resize(n);
  NeumaierSum norm;
  for (int i = 1; i <= n; ++i) {
    const double mu = i / (n + 1.0);
    out.w[i - 1] = 1.0 / (mu * (1.0 - mu));
    norm.add(1.0);  // w_i * mu_i(1-mu_i) = 1 termwise
  }
  out.normalization = norm.value();
  return out;
}

FocalDirection focal_direction(const WeightVector& w,
                               const CovarianceMatrix& covariance) {
  const int n = covariance.n;
  if (w.n() != n || covariance.m.rows() != n) {
    throw Error("index_order", "focal_direction dimension mismatch");
  }
  Eigen::VectorXd wv(n);
  for (int i = 0; i < n; ++i) wv(i) = w.w[i];
  Eigen::VectorXd delta = covariance.m * wv;
  const double dmax = delta.maxCoeff();
  if (dmax > 0.0) delta /= dmax;
  FocalDirection out;
  out.delta.resize(n);
  out.zeta.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double mu = i / (n + 1.0);
    out.zeta[i - 1] = delta(i - 1) / (mu * (1.0 - mu));
    // Stored so that zeta_i * mu_i(1-mu_i) == delta_i holds bit-exactly
    // (division then multiplication does not round-trip in general).
    out.delta[i - 1] = out.zeta[i - 1] * (mu * (1.0 - mu));
  }
  return out;
}

}  // namespace gof
