#pragma once

#include <cstdint>
#include <vector>

#include "gof/circularize.hpp"
#include "gof/rng.hpp"
#include "gof/statistics.hpp"

namespace gof {

// Local perturbation of the uniform density around eta: 1 + tau on
// (eta-sigma, eta], 1 - tau on (eta, eta+sigma), 1 elsewhere. tau <= 1 gives
// a proper density; larger tau is still accepted by the piecewise quantile
// sampler (the branches are applied literally, first match wins) but the
// params are flagged improper.
struct PerturbationParams {
  double tau = 0.0;
  double eta = 0.5;
  double sigma = 0.5;

  bool is_proper() const { return tau <= 1.0; }
  // Support condition: 0 <= eta-sigma and eta+sigma <= 1, sigma > 0, tau >= 0.
  void validate() const;  // "probability_out_of_range"
};

// Quantile map F^{-1}_{eta,sigma,tau}(p). Branch intervals are checked in
// display order with first match winning; for tau <= 1 they partition (0,1)
// so the order is immaterial, for tau > 1 it pins down a well-defined
// monotone-by-parts sampler. Throws "probability_out_of_range" off (0,1).
double perturbed_inverse_cdf(double p, const PerturbationParams& params);

// The matching piecewise-linear cdf, equal to x outside (eta-sigma,
// eta+sigma). Only a valid cdf for tau <= 1; tau > 1 -> "improper_cdf".
double perturbed_cdf(double x, const PerturbationParams& params);

// Shared-draw simulation engine: one stream of replicates (sorted uniform
// samples of size n, optionally pushed through the perturbation quantile map)
// evaluated at every requested statistic x pooling cell. Row index is
// kind_index * pools.size() + pool_index; each row has `reps` entries.
// Replicates are sharded into fixed-size blocks with per-block substreams, so
// the output is a pure function of (seed, n, reps, alternative) and the
// worker count only changes scheduling.
std::vector<std::vector<double>> simulate_cells(
    const std::vector<StatisticKind>& kinds,
    const std::vector<PoolingMode>& pools, int n, int reps,
    const RunSeed& seed, const PerturbationParams* alternative = nullptr,
    int workers = 1);

// Single-cell conveniences over simulate_cells (identical draws, so a cell
// simulated alone matches the same cell inside a larger run).
std::vector<double> simulate_null(StatisticKind stat, PoolingMode pool, int n,
                                  int reps, const RunSeed& seed,
                                  int workers = 1);
std::vector<double> simulate_alternative(StatisticKind stat, PoolingMode pool,
                                         int n, int reps,
                                         const PerturbationParams& params,
                                         const RunSeed& seed, int workers = 1);

// Upper-tail empirical critical value: the ceil((1-alpha)m)-th order
// statistic of the null sample. Requires m >= 1/alpha
// ("insufficient_null_sample") and alpha in (0,1).
double critical_value(const std::vector<double>& null_sample, double alpha);

// Add-one upper-tail p-value (1 + #{null >= value}) / (m + 1), always in
// (0, 1]. Empty sample -> "empty_sample".
double p_value(double stat_value, const std::vector<double>& null_sample);

// Monte Carlo standard error of the critical value at level alpha, from the
// order-statistic spread of the (sorted-on-entry or not) null sample.
double critical_value_se(const std::vector<double>& null_sample, double alpha);

struct CriticalValueCell {
  StatisticKind stat;
  PoolingMode pool;
  int n = 0;
  double alpha = 0.0;
  int reps = 0;
  double value = 0.0;
  double se = 0.0;
};

struct CriticalValueTable {
  std::uint64_t master_seed = 0;
  std::vector<CriticalValueCell> cells;
};

CriticalValueTable critical_value_table(const std::vector<StatisticKind>& kinds,
                                        const std::vector<PoolingMode>& pools,
                                        const std::vector<int>& n_grid,
                                        double alpha, int reps,
                                        const RunSeed& seed, int workers = 1);

struct PowerConfig {
  // the table layout of the reference study: AD appears in its classic form
  std::vector<StatisticKind> statistics = {
      StatisticKind::W2,      StatisticKind::R2,  StatisticKind::ADClassic,
      StatisticKind::ZhangLR, StatisticKind::CvM, StatisticKind::KS};
  std::vector<PoolingMode> poolings = {PoolingMode::None, PoolingMode::Avg,
                                       PoolingMode::Max};
  std::vector<int> n_grid = {10, 50, 100, 150, 200, 250, 300};
  double alpha = 0.05;
  int null_reps = 10000;
  int alt_reps = 10000;
  PerturbationParams params;
  RunSeed seed;
  int workers = 1;
};

struct PowerCell {
  StatisticKind stat;
  PoolingMode pool;
  double power = 0.0;
  double se = 0.0;
};

struct PowerRow {
  int n = 0;
  std::vector<PowerCell> cells;  // statistics-major, poolings within
};

// Whole-table power study: per n, critical values from fresh null replicates,
// then rejection fractions of alternative replicates drawn through the
// perturbation quantile map. Pure function of the config (seed included).
struct PowerTable {
  PowerConfig config;
  std::vector<PowerRow> rows;
};

PowerTable power_study(const PowerConfig& config);

}  // namespace gof
