#include "gof/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gof/error.hpp"
#include "gof/order_stats.hpp"

namespace gof {

namespace {

constexpr int kRepBlock = 64;  // replicates per substream block

std::string stream_tag(const char* purpose, int n) {
  return std::string(purpose) + "/n=" + std::to_string(n);
}

// k-th (1-based) order statistic index for the upper p-quantile, with a tiny
// downward nudge so exact products like 0.9 * 10 do not round up.
int quantile_rank(int m, double p) {
  int k = static_cast<int>(std::ceil(p * m - 1e-9));
  return std::clamp(k, 1, m);
}

}  // namespace

void PerturbationParams::validate() const {
  if (!(sigma > 0.0) || !(tau >= 0.0) || eta - sigma < 0.0 ||
      eta + sigma > 1.0) {
    throw Error("probability_out_of_range",
                "perturbation window (eta-sigma, eta+sigma) must sit inside "
                "[0,1] with sigma > 0 and tau >= 0");
  }
}

double perturbed_inverse_cdf(double p, const PerturbationParams& params) {
  params.validate();
  if (!(p > 0.0 && p < 1.0)) {
    throw Error("probability_out_of_range",
                "quantile level must lie in (0,1), got " + std::to_string(p));
  }
  const double tau = params.tau, eta = params.eta, sigma = params.sigma;
  if (p <= eta - sigma) return p;
  if (p <= eta + tau * sigma) return p - tau * (p - eta + sigma) / (1.0 + tau);
  if (p < eta + sigma) return p + tau * (p - eta - sigma) / (1.0 - tau);
  return p;
}

double perturbed_cdf(double x, const PerturbationParams& params) {
  params.validate();
  if (params.tau > 1.0) {
    throw Error("improper_cdf",
                "tau > 1 gives a signed density; the cdf is not defined");
  }
  if (!(x > 0.0 && x < 1.0)) {
    throw Error("probability_out_of_range",
                "cdf argument must lie in (0,1), got " + std::to_string(x));
  }
  const double tau = params.tau, eta = params.eta, sigma = params.sigma;
  if (x <= eta - sigma) return x;
  if (x <= eta) return x + tau * (x - eta + sigma);
  if (x < eta + sigma) return x - tau * (x - eta - sigma);
  return x;
}

std::vector<std::vector<double>> simulate_cells(
    const std::vector<StatisticKind>& kinds,
    const std::vector<PoolingMode>& pools, int n, int reps,
    const RunSeed& seed, const PerturbationParams* alternative, int workers) {
  if (n < 1) throw Error("empty_sample", "replicate sample size must be >= 1");
  if (reps < 1) {
    throw Error("insufficient_null_sample", "need at least one replicate");
  }
  if (kinds.empty() || pools.empty()) {
    throw Error("bad_selector", "no statistic/pooling cells requested");
  }
  if (alternative != nullptr) alternative->validate();

  const int npools = static_cast<int>(pools.size());
  const int ncells = static_cast<int>(kinds.size()) * npools;
  std::vector<std::vector<double>> out(ncells, std::vector<double>(reps));

  const StatCache cache(n);
  const bool need_scan =
      std::any_of(pools.begin(), pools.end(),
                  [](PoolingMode p) { return p != PoolingMode::None; });
  const std::string tag =
      stream_tag(alternative != nullptr ? "mc_alt" : "mc_null", n);
  const int nblocks = (reps + kRepBlock - 1) / kRepBlock;

  std::atomic<int> next_block{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto run_blocks = [&]() {
    std::vector<double> draws(n);
    std::vector<double> lu(n), l1u(n);
    try {
      for (;;) {
        const int b = next_block.fetch_add(1);
        if (b >= nblocks) break;
        Stream stream = substream(seed, tag, static_cast<std::uint64_t>(b));
        const int lo = b * kRepBlock;
        const int hi = std::min(reps, lo + kRepBlock);
        for (int r = lo; r < hi; ++r) {
          for (int i = 0; i < n; ++i) {
            double u = clamp_unit(stream.uniform());
            if (alternative != nullptr) {
              u = clamp_unit(perturbed_inverse_cdf(u, *alternative));
            }
            draws[i] = u;
          }
          const SortedUniforms su = sorted_uniforms_from_probs(draws);
          if (need_scan) {
            const ScanTable scans = scan_all(kinds, su, cache);
            for (std::size_t k = 0; k < kinds.size(); ++k) {
              for (int q = 0; q < npools; ++q) {
                out[k * npools + q][r] = pool(scans.t[k], pools[q]);
              }
            }
          } else {
            for (int i = 0; i < n; ++i) {
              lu[i] = std::log(su.values[i]);
              l1u[i] = std::log1p(-su.values[i]);
            }
            for (std::size_t k = 0; k < kinds.size(); ++k) {
              const double value =
                  evaluate_cached(kinds[k], cache, su.values, lu, l1u);
              for (int q = 0; q < npools; ++q) out[k * npools + q][r] = value;
            }
          }
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> hold(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const int nthreads = std::clamp(workers, 1, nblocks);
  if (nthreads <= 1) {
    run_blocks();
  } else {
    std::vector<std::thread> crew;
    crew.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) crew.emplace_back(run_blocks);
    for (std::thread& t : crew) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::vector<double> simulate_null(StatisticKind stat, PoolingMode pool, int n,
                                  int reps, const RunSeed& seed, int workers) {
  return std::move(
      simulate_cells({stat}, {pool}, n, reps, seed, nullptr, workers)[0]);
}

std::vector<double> simulate_alternative(StatisticKind stat, PoolingMode pool,
                                         int n, int reps,
                                         const PerturbationParams& params,
                                         const RunSeed& seed, int workers) {
  return std::move(
      simulate_cells({stat}, {pool}, n, reps, seed, &params, workers)[0]);
}

double critical_value(const std::vector<double>& null_sample, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error("probability_out_of_range",
                "alpha must lie in (0,1), got " + std::to_string(alpha));
  }
  const int m = static_cast<int>(null_sample.size());
  if (m == 0 || static_cast<double>(m) * alpha < 1.0 - 1e-9) {
    throw Error("insufficient_null_sample",
                "need at least 1/alpha null replicates, got " +
                    std::to_string(m));
  }
  std::vector<double> sorted(null_sample);
  std::sort(sorted.begin(), sorted.end());
  return sorted[quantile_rank(m, 1.0 - alpha) - 1];
}

double critical_value_se(const std::vector<double>& null_sample, double alpha) {
  const int m = static_cast<int>(null_sample.size());
  if (m < 2) return 0.0;
  std::vector<double> sorted(null_sample);
  std::sort(sorted.begin(), sorted.end());
  const double p = 1.0 - alpha;
  const int k = quantile_rank(m, p);
  const int h = std::max(1, m / 200);
  const int lo = std::max(1, k - h), hi = std::min(m, k + h);
  const double spread = sorted[hi - 1] - sorted[lo - 1];
  if (!(spread > 0.0) || hi == lo) return 0.0;
  const double density = (static_cast<double>(hi - lo) / m) / spread;
  return std::sqrt(p * (1.0 - p) / m) / density;
}

double p_value(double stat_value, const std::vector<double>& null_sample) {
  if (null_sample.empty()) {
    throw Error("empty_sample", "p-value needs a nonempty null sample");
  }
  const std::ptrdiff_t count =
      std::count_if(null_sample.begin(), null_sample.end(),
                    [&](double v) { return v >= stat_value; });
  return (1.0 + static_cast<double>(count)) /
         (static_cast<double>(null_sample.size()) + 1.0);
}

CriticalValueTable critical_value_table(const std::vector<StatisticKind>& kinds,
                                        const std::vector<PoolingMode>& pools,
                                        const std::vector<int>& n_grid,
                                        double alpha, int reps,
                                        const RunSeed& seed, int workers) {
  CriticalValueTable table;
  table.master_seed = seed.master;
  for (const int n : n_grid) {
    const std::vector<std::vector<double>> cells =
        simulate_cells(kinds, pools, n, reps, seed, nullptr, workers);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      for (std::size_t q = 0; q < pools.size(); ++q) {
        const std::vector<double>& sample = cells[k * pools.size() + q];
        CriticalValueCell cell;
        cell.stat = kinds[k];
        cell.pool = pools[q];
        cell.n = n;
        cell.alpha = alpha;
        cell.reps = reps;
        cell.value = critical_value(sample, alpha);
        cell.se = critical_value_se(sample, alpha);
        table.cells.push_back(cell);
      }
    }
  }
  return table;
}

PowerTable power_study(const PowerConfig& config) {
  config.params.validate();
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error("probability_out_of_range",
                "alpha must lie in (0,1), got " + std::to_string(config.alpha));
  }
  PowerTable table;
  table.config = config;
  for (const int n : config.n_grid) {
    const std::vector<std::vector<double>> nulls =
        simulate_cells(config.statistics, config.poolings, n, config.null_reps,
                       config.seed, nullptr, config.workers);
    const std::vector<std::vector<double>> alts =
        simulate_cells(config.statistics, config.poolings, n, config.alt_reps,
                       config.seed, &config.params, config.workers);
    PowerRow row;
    row.n = n;
    for (std::size_t k = 0; k < config.statistics.size(); ++k) {
      for (std::size_t q = 0; q < config.poolings.size(); ++q) {
        const std::size_t c = k * config.poolings.size() + q;
        const double crit = critical_value(nulls[c], config.alpha);
        const std::ptrdiff_t reject =
            std::count_if(alts[c].begin(), alts[c].end(),
                          [&](double v) { return v > crit; });
        PowerCell cell;
        cell.stat = config.statistics[k];
        cell.pool = config.poolings[q];
        cell.power = static_cast<double>(reject) / config.alt_reps;
        cell.se = std::sqrt(cell.power * (1.0 - cell.power) / config.alt_reps);
        row.cells.push_back(cell);
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace gof
