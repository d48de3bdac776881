#pragma once

#include <string>
#include <vector>

#include "gof/order_stats.hpp"

namespace gof {

// The base test statistics. Large values signal departure from the null.
// AD carries two forms: the KL-divergence-style variant (default) and the
// textbook A^2; they are close in distribution but not identical, so both are
// first-class and serialize as distinct tokens.
enum class StatisticKind { W2, R2, AD, ADClassic, ZhangLR, CvM, KS };

inline constexpr StatisticKind kAllStatistics[] = {
    StatisticKind::W2,      StatisticKind::R2,  StatisticKind::AD,
    StatisticKind::ADClassic, StatisticKind::ZhangLR, StatisticKind::CvM,
    StatisticKind::KS};

// Lowercase wire tokens: w2, r2, ad, ad_classic, zhang_la, cvm, ks.
const char* to_token(StatisticKind kind);
StatisticKind statistic_from_token(const std::string& token);  // "bad_selector"

enum class AdMode { Eq2, Classic };

// Rescaling constant C_n = 1/(2 sum_{k=1..n} 1/k) of the R statistic.
double rescale_constant(int n);

// Per-n precomputed grids and logs shared by every statistic; the Monte Carlo
// loops hold one instance so the per-replicate cost is just the sample logs.
struct StatCache {
  explicit StatCache(int n);

  int n;
  double cn;                       // C_n
  std::vector<double> a, mu;       // grids
  std::vector<double> log_a, log1m_a, log_mu, log1m_mu;
  std::vector<double> inv_mu, inv_1m_mu;   // 1/mu_i, 1/(1-mu_i)
  std::vector<double> zhang_lo, zhang_hi;  // 1/(i-1/2), 1/(n-i+1/2)
};

// Statistic evaluation given precomputed logs of the sample (lu_i = ln U_(i),
// l1u_i = ln(1-U_(i))). This is the shared kernel behind the public one-shot
// functions and the circular-scan fast path.
double evaluate_cached(StatisticKind kind, const StatCache& cache,
                       const std::vector<double>& u,
                       const std::vector<double>& lu,
                       const std::vector<double>& l1u);

// One-shot evaluators.
double w2_statistic(const SortedUniforms& u);
double r2_statistic(const SortedUniforms& u);
double ad_statistic(const SortedUniforms& u, AdMode mode = AdMode::Eq2);
double zhang_lr_statistic(const SortedUniforms& u);
double cvm_statistic(const SortedUniforms& u);
double ks_statistic(const SortedUniforms& u);
double evaluate(StatisticKind kind, const SortedUniforms& u);

// Second-order summands Y_i = -2[mu^2(1-mu) ln(U/mu) + mu(1-mu)^2 ln((1-U)/(1-mu))];
// zero at U_(i) = mu_i, and sum w_i Y_i recovers the weighted statistics.
std::vector<double> summands_Y(const SortedUniforms& u);

}  // namespace gof
