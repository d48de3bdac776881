#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gof {

// First and second marginal moments of the log-transformed uniform order
// statistics, all in closed form through digamma/trigamma:
//   E[ln U_(i)]       = psi(i) - psi(n+1)
//   Var[ln U_(i)]     = psi1(i) - psi1(n+1)
// and the mirror formulas with i -> n+1-i for ln(1 - U_(i)).
struct LogMoments {
  std::vector<double> mean_log_u;
  std::vector<double> mean_log_1mu;
  std::vector<double> var_log_u;
  std::vector<double> var_log_1mu;

  int n() const { return static_cast<int>(mean_log_u.size()); }
};

LogMoments log_moments(int n);

// All four pairwise covariance blocks of (ln U_(i), ln(1-U_(j))).  Blocks are
// indexed (i-1, j-1).  uu and oo come straight from trigamma differences; the
// cross block u1 = Cov[ln U_(i), ln(1-U_(j))] is -psi1(n+1) for i <= j and
// needs the infinite series below for i > j.
struct LogCovariance {
  Eigen::MatrixXd uu;  // Cov[ln U_(i),     ln U_(j)]
  Eigen::MatrixXd u1;  // Cov[ln U_(i),     ln(1-U_(j))]
  Eigen::MatrixXd oo;  // Cov[ln(1-U_(i)),  ln(1-U_(j))]

  // 2n x 2n matrix over the stacked vector (ln U_(1..n), ln(1-U_(1..n))).
  Eigen::MatrixXd full() const;
};

// Cov[ln(1-U_(i)), ln U_(j)] for i < j: the hypergeometric-type series
//
//   Gamma(n+1)/Gamma(i) * sum_k Gamma(i+k)/(k Gamma(n+1+k)) [psi(n+1+k)-psi(j+k)]
//     - [psi(n+1-i)-psi(n+1)] [psi(j)-psi(n+1)]
//
// evaluated with incrementally updated term ratios.  Terms decay like
// k^{-(n+2-i)}, which is slow near i = n; the identity
// D(i,j) = D(n+1-j, n+1-i) lets us always evaluate the faster-decaying of the
// two equivalent index pairs.  Truncation: |term| < tol * |partial sum|, hard
// cap 1e6 * n terms ("series_cap_exceeded" beyond that).
double log_cross_cov_series(int i, int j, int n, double tol = 1e-12);

LogCovariance log_cov_matrix(int n, double tol = 1e-12);

enum class CovKind { Y_summands, squared_deviations, log_pairs };

// A symmetric covariance matrix together with the provenance of its entries.
// Invariants (checked by the test-suite, not enforced here): symmetry to
// 1e-12, strictly positive diagonal, smallest eigenvalue >= -1e-8 * trace.
struct CovarianceMatrix {
  Eigen::MatrixXd m;
  CovKind kind = CovKind::Y_summands;
  int n = 0;
  double series_tolerance = 1e-12;
};

// Covariance of the summands Y_i = -2[mu_i^2(1-mu_i) ln(U_(i)/mu_i)
// + mu_i(1-mu_i)^2 ln((1-U_(i))/(1-mu_i))].  Writing Y_i = -2 B_i + const,
// Sigma_ij = 4 Cov(B_i, B_j) expands through the log blocks as
//
//   Sigma_ij = 4 [ p_i p_j uu_ij + p_i q_j u1_ij + q_i p_j u1_ji + q_i q_j oo_ij ]
//
// with p_i = mu_i^2(1-mu_i), q_i = mu_i(1-mu_i)^2.
CovarianceMatrix cov_Y_matrix(int n, double tol = 1e-12);

// Exact finite-sample Cov[(U_(i)-mu_i)^2, (U_(j)-mu_j)^2] for i <= j:
//
//   2 mu_i^2 (1-mu_j)^2 / ((n+2)(n+3))
//     + mu_i(1-mu_j)/((n+2)(n+3)) * { 3(1-3mu_i)(2-3mu_j)/(n+4)
//                                     - (1-mu_i) mu_j / (n+2) }
//
// Requires 1 <= i <= j <= n ("index_order" otherwise); the matrix builder
// extends to i > j by symmetry.  n^2 * cov -> 2 t^2 (1-s)^2 in the Brownian
// bridge limit.
double cov_squared_deviations(int i, int j, int n);

CovarianceMatrix cov_squared_deviations_matrix(int n);

}  // namespace gof
