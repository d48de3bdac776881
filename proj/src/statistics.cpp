#include "gof/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "gof/error.hpp"
#include "gof/special.hpp"

namespace gof {

const char* to_token(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::W2: return "w2";
    case StatisticKind::R2: return "r2";
    case StatisticKind::AD: return "ad";
    case StatisticKind::ADClassic: return "ad_classic";
    case StatisticKind::ZhangLR: return "zhang_la";
    case StatisticKind::CvM: return "cvm";
    case StatisticKind::KS: return "ks";
  }
  return "?";
}

StatisticKind statistic_from_token(const std::string& token) {
  for (StatisticKind k : kAllStatistics)
    if (token == to_token(k)) return k;
  throw Error("bad_selector", "unknown statistic token: " + token);
}

double rescale_constant(int n) { return 1.0 / (2.0 * harmonic(n)); }

StatCache::StatCache(int n_)
    : n(n_), cn(rescale_constant(n_)), a(n_), mu(n_), log_a(n_), log1m_a(n_),
      log_mu(n_), log1m_mu(n_), inv_mu(n_), inv_1m_mu(n_), zhang_lo(n_),
      zhang_hi(n_) {
  for (int i = 1; i <= n; ++i) {
    const int k = i - 1;
    a[k] = (i - 0.5) / n;
    mu[k] = static_cast<double>(i) / (n + 1);
    log_a[k] = std::log(a[k]);
    log1m_a[k] = std::log1p(-a[k]);
    log_mu[k] = std::log(mu[k]);
    log1m_mu[k] = std::log1p(-mu[k]);
    inv_mu[k] = 1.0 / mu[k];
    inv_1m_mu[k] = 1.0 / (1.0 - mu[k]);
    zhang_lo[k] = 1.0 / (i - 0.5);
    zhang_hi[k] = 1.0 / (n - i + 0.5);
  }
}

double evaluate_cached(StatisticKind kind, const StatCache& g,
                       const std::vector<double>& u,
                       const std::vector<double>& lu,
                       const std::vector<double>& l1u) {
  const int n = g.n;
  NeumaierSum s;
  switch (kind) {
    case StatisticKind::W2:
      // -2 sum [ mu ln(U/mu) + (1-mu) ln((1-U)/(1-mu)) ]
      for (int k = 0; k < n; ++k)
        s.add(g.mu[k] * (lu[k] - g.log_mu[k]) +
              (1.0 - g.mu[k]) * (l1u[k] - g.log1m_mu[k]));
      return -2.0 * s.value();
    case StatisticKind::R2:
      // -2 C_n sum [ ln(U/mu)/(1-mu) + ln((1-U)/(1-mu))/mu ]
      for (int k = 0; k < n; ++k)
        s.add(g.inv_1m_mu[k] * (lu[k] - g.log_mu[k]) +
              g.inv_mu[k] * (l1u[k] - g.log1m_mu[k]));
      return -2.0 * g.cn * s.value();
    case StatisticKind::AD:
      // same KL shape on the plotting-position grid a_i
      for (int k = 0; k < n; ++k)
        s.add(g.a[k] * (lu[k] - g.log_a[k]) +
              (1.0 - g.a[k]) * (l1u[k] - g.log1m_a[k]));
      return -2.0 * s.value();
    case StatisticKind::ADClassic:
      // A^2 = -n - (1/n) sum (2i-1)[ ln U_(i) + ln(1 - U_(n+1-i)) ]
      for (int k = 0; k < n; ++k)
        s.add((2.0 * (k + 1) - 1.0) * (lu[k] + l1u[n - 1 - k]));
      return -n - s.value() / n;
    case StatisticKind::ZhangLR:
      // Z_A = -sum [ ln(U_(i))/(n-i+1/2) + ln(1-U_(i))/(i-1/2) ]
      for (int k = 0; k < n; ++k)
        s.add(lu[k] * g.zhang_hi[k] + l1u[k] * g.zhang_lo[k]);
      return -s.value();
    case StatisticKind::CvM:
      // 1/(12n) + sum (U_(i) - a_i)^2
      for (int k = 0; k < n; ++k) {
        const double d = u[k] - g.a[k];
        s.add(d * d);
      }
      return 1.0 / (12.0 * n) + s.value();
    case StatisticKind::KS: {
      double m = 0.0;
      for (int k = 0; k < n; ++k) {
        m = std::max(m, (k + 1.0) / n - u[k]);
        m = std::max(m, u[k] - static_cast<double>(k) / n);
      }
      return m;
    }
  }
  throw Error("bad_selector", "unhandled statistic kind");
}

namespace {

double evaluate_fresh(StatisticKind kind, const SortedUniforms& su) {
  const int n = su.n();
  StatCache g(n);
  std::vector<double> lu(n), l1u(n);
  for (int k = 0; k < n; ++k) {
    lu[k] = std::log(su.values[k]);
    l1u[k] = std::log1p(-su.values[k]);
  }
  return evaluate_cached(kind, g, su.values, lu, l1u);
}

}  // namespace

double w2_statistic(const SortedUniforms& u) {
  return evaluate_fresh(StatisticKind::W2, u);
}

double r2_statistic(const SortedUniforms& u) {
  return evaluate_fresh(StatisticKind::R2, u);
}

double ad_statistic(const SortedUniforms& u, AdMode mode) {
  switch (mode) {
    case AdMode::Eq2: return evaluate_fresh(StatisticKind::AD, u);
    case AdMode::Classic: return evaluate_fresh(StatisticKind::ADClassic, u);
  }
  throw Error("unknown_ad_mode", "AD mode must be Eq2 or Classic");
}

double zhang_lr_statistic(const SortedUniforms& u) {
  return evaluate_fresh(StatisticKind::ZhangLR, u);
}

double cvm_statistic(const SortedUniforms& u) {
  return evaluate_fresh(StatisticKind::CvM, u);
}

double ks_statistic(const SortedUniforms& u) {
  return evaluate_fresh(StatisticKind::KS, u);
}

double evaluate(StatisticKind kind, const SortedUniforms& u) {
  return evaluate_fresh(kind, u);
}

std::vector<double> summands_Y(const SortedUniforms& su) {
  const int n = su.n();
  std::vector<double> y(n);
  for (int k = 0; k < n; ++k) {
    const double mu = (k + 1.0) / (n + 1);
    const double m1 = 1.0 - mu;
    const double lu = std::log(su.values[k]) - std::log(mu);
    const double l1u = std::log1p(-su.values[k]) - std::log1p(-mu);
    y[k] = -2.0 * (mu * mu * m1 * lu + mu * m1 * m1 * l1u);
  }
  return y;
}

}  // namespace gof
