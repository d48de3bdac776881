#pragma once

#include <string>
#include <vector>

#include "gof/statistics.hpp"

namespace gof {

// Pooling over the circular scan: None = offset 0 only (the plain statistic),
// Avg = mean over all n+1 offsets, Max = maximum over them.
enum class PoolingMode { None, Avg, Max };

inline constexpr PoolingMode kAllPoolings[] = {PoolingMode::None,
                                               PoolingMode::Avg,
                                               PoolingMode::Max};

// Wire tokens follow the table-header convention cs0 / cs1 / cs2, with
// cs_avg / cs_max accepted as aliases on input.
const char* to_token(PoolingMode mode);
PoolingMode pooling_from_token(const std::string& token);  // "bad_selector"

// T_{n,c} for c = 0..n: the statistic applied to every circularly shifted
// sample. Entry 0 is the uncircularized value.
std::vector<double> scan(StatisticKind kind, const SortedUniforms& u);

double pool(const std::vector<double>& values, PoolingMode mode);

double circular_statistic(StatisticKind kind, PoolingMode mode,
                          const SortedUniforms& u);

// Fast path for Monte Carlo: one pass over the shifts evaluates every
// requested statistic, sharing the shifted vectors and their logs. Rows of
// `t` are indexed like `kinds`; each row has n+1 scan entries.
struct ScanTable {
  std::vector<StatisticKind> kinds;
  std::vector<std::vector<double>> t;
};

ScanTable scan_all(const std::vector<StatisticKind>& kinds,
                   const SortedUniforms& u, const StatCache& cache);

}  // namespace gof
