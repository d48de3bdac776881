#include "gof/covariance.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "gof/error.hpp"
#include "gof/special.hpp"

namespace gof {

LogMoments log_moments(int n) {
  if (n < 1) throw Error("empty_sample", "log_moments requires n >= 1");
  LogMoments out;
  out.mean_log_u.resize(n);
  out.mean_log_1mu.resize(n);
  out.var_log_u.resize(n);
  out.var_log_1mu.resize(n);
  const double psi_np1 = digamma(n + 1.0);
  const double psi1_np1 = trigamma(n + 1.0);
  for (int i = 1; i <= n; ++i) {
    out.mean_log_u[i - 1] = digamma(i) - psi_np1;
    out.var_log_u[i - 1] = trigamma(i) - psi1_np1;
    out.mean_log_1mu[i - 1] = digamma(n + 1.0 - i) - psi_np1;
    out.var_log_1mu[i - 1] = trigamma(n + 1.0 - i) - psi1_np1;
  }
  return out;
}

namespace {

// Raw series for Cov[ln(1-U_(i)), ln U_(j)], valid for 1 <= i < j <= n.
// term_k = (g_k / k) * b_k with
//   g_1 = i/(n+1),                 g_{k+1} = g_k (i+k)/(n+1+k)
//   b_1 = sum_{m=j+1}^{n+1} 1/m,   b_{k+1} = b_k - 1/(j+k) + 1/(n+1+k)
// so no gamma/digamma evaluations appear inside the loop.
double cross_series_raw(int i, int j, int n, double tol) {
  const std::int64_t cap = static_cast<std::int64_t>(1000000) * n;
  double g = static_cast<double>(i) / (n + 1.0);
  NeumaierSum b0;
  for (int m = j + 1; m <= n + 1; ++m) b0.add(1.0 / m);
  double b = b0.value();
  NeumaierSum sum;
  std::int64_t k = 1;
  for (;;) {
    const double term = g / static_cast<double>(k) * b;
    sum.add(term);
    if (std::abs(term) <= tol * std::abs(sum.value())) break;
    if (k >= cap) {
      throw Error("series_cap_exceeded",
                  "cross-covariance series i=" + std::to_string(i) + " j=" +
                      std::to_string(j) + " n=" + std::to_string(n) +
                      " still at |term|=" + std::to_string(std::abs(term)) +
                      " after " + std::to_string(cap) + " terms");
    }
    g *= (i + static_cast<double>(k)) / (n + 1.0 + static_cast<double>(k));
    b += 1.0 / (n + 1.0 + static_cast<double>(k)) -
         1.0 / (j + static_cast<double>(k));
    ++k;
  }
  const double psi_np1 = digamma(n + 1.0);
  return sum.value() -
         (digamma(n + 1.0 - i) - psi_np1) * (digamma(j) - psi_np1);
}

}  // namespace

double log_cross_cov_series(int i, int j, int n, double tol) {
  if (n < 1 || i < 1 || j <= i || j > n) {
    throw Error("index_order", "cross-covariance series needs 1 <= i < j <= n");
  }
  // The two equivalent evaluations decay like k^{-(n+2-i)} and k^{-(j+1)};
  // pick whichever exponent is larger (ties go to the literal form).
  if (n + 2 - i >= j + 1) return cross_series_raw(i, j, n, tol);
  return cross_series_raw(n + 1 - j, n + 1 - i, n, tol);
}

Eigen::MatrixXd LogCovariance::full() const {
  const Eigen::Index n = uu.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = uu;
  out.topRightCorner(n, n) = u1;
  out.bottomLeftCorner(n, n) = u1.transpose();
  out.bottomRightCorner(n, n) = oo;
  return out;
}

LogCovariance log_cov_matrix(int n, double tol) {
  if (n < 1) throw Error("empty_sample", "log_cov_matrix requires n >= 1");
  LogCovariance out;
  out.uu.resize(n, n);
  out.u1.resize(n, n);
  out.oo.resize(n, n);
  const double psi1_np1 = trigamma(n + 1.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out.uu(i - 1, j - 1) = trigamma(std::max(i, j)) - psi1_np1;
      out.oo(i - 1, j - 1) = trigamma(n + 1.0 - std::min(i, j)) - psi1_np1;
      if (i <= j) {
        out.u1(i - 1, j - 1) = -psi1_np1;
      } else {
        // Cov[ln U_(i), ln(1-U_(j))] with i > j equals the series value for
        // the pair (j, i) in Cov[ln(1-U_(.)), ln U_(.)] orientation.
        out.u1(i - 1, j - 1) = log_cross_cov_series(j, i, n, tol);
      }
    }
  }
  return out;
}

CovarianceMatrix cov_Y_matrix(int n, double tol) {
  const LogCovariance lc = log_cov_matrix(n, tol);
  Eigen::VectorXd p(n), q(n);
  for (int i = 1; i <= n; ++i) {
    const double mu = i / (n + 1.0);
    p(i - 1) = mu * mu * (1.0 - mu);
    q(i - 1) = mu * (1.0 - mu) * (1.0 - mu);
  }
  CovarianceMatrix out;
  out.kind = CovKind::Y_summands;
  out.n = n;
  out.series_tolerance = tol;
  out.m = 4.0 * (p.asDiagonal() * lc.uu * p.asDiagonal() +
                 p.asDiagonal() * lc.u1 * q.asDiagonal() +
                 q.asDiagonal() * lc.u1.transpose() * p.asDiagonal() +
                 q.asDiagonal() * lc.oo * q.asDiagonal());
  // The analytic blocks are exactly symmetric in exact arithmetic; symmetrize
  // to kill the last-bit asymmetry from the two series evaluations.
  out.m = 0.5 * (out.m + out.m.transpose()).eval();
  return out;
}

double cov_squared_deviations(int i, int j, int n) {
  if (!(1 <= i && i <= j && j <= n)) {
    throw Error("index_order", "cov_squared_deviations needs 1 <= i <= j <= n");
  }
  const double mi = i / (n + 1.0);
  const double mj = j / (n + 1.0);
  const double denom = (n + 2.0) * (n + 3.0);
  return 2.0 * mi * mi * (1.0 - mj) * (1.0 - mj) / denom +
         mi * (1.0 - mj) / denom *
             (3.0 * (1.0 - 3.0 * mi) * (2.0 - 3.0 * mj) / (n + 4.0) -
              (1.0 - mi) * mj / (n + 2.0));
}

CovarianceMatrix cov_squared_deviations_matrix(int n) {
  if (n < 1) throw Error("empty_sample", "covariance matrix requires n >= 1");
  CovarianceMatrix out;
  out.kind = CovKind::squared_deviations;
  out.n = n;
  out.m.resize(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const double v = cov_squared_deviations(i, j, n);
      out.m(i - 1, j - 1) = v;
      out.m(j - 1, i - 1) = v;
    }
  }
  return out;
}

}  // namespace gof
