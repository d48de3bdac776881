#include "gof/circularize.hpp"

#include <algorithm>
#include <cmath>

#include "gof/error.hpp"
#include "gof/special.hpp"

namespace gof {

const char* to_token(PoolingMode mode) {
  switch (mode) {
    case PoolingMode::None: return "cs0";
    case PoolingMode::Avg: return "cs1";
    case PoolingMode::Max: return "cs2";
  }
  return "?";
}

PoolingMode pooling_from_token(const std::string& token) {
  if (token == "cs0" || token == "none") return PoolingMode::None;
  if (token == "cs1" || token == "cs_avg" || token == "avg") return PoolingMode::Avg;
  if (token == "cs2" || token == "cs_max" || token == "max") return PoolingMode::Max;
  throw Error("bad_selector", "unknown pooling token: " + token);
}

ScanTable scan_all(const std::vector<StatisticKind>& kinds,
                   const SortedUniforms& u, const StatCache& cache) {
  const int n = u.n();
  ScanTable out;
  out.kinds = kinds;
  out.t.assign(kinds.size(), std::vector<double>(n + 1));

  const Spacings d = spacings(u);
  std::vector<double> uc(n), lu(n), l1u(n);
  for (int c = 0; c <= n; ++c) {
    // Build the shifted sample once; all statistics share it and its logs.
    NeumaierSum acc;
    for (int i = 1; i <= n; ++i) {
      acc.add(d.d[(c + i - 1) % (n + 1)]);  // D_{c+i}, 1-based
      uc[i - 1] = clamp_unit(acc.value());
    }
    for (int i = 1; i < n; ++i)
      if (uc[i] < uc[i - 1]) uc[i] = uc[i - 1];
    for (int k = 0; k < n; ++k) {
      lu[k] = std::log(uc[k]);
      l1u[k] = std::log1p(-uc[k]);
    }
    for (size_t s = 0; s < kinds.size(); ++s)
      out.t[s][c] = evaluate_cached(kinds[s], cache, uc, lu, l1u);
  }
  return out;
}

std::vector<double> scan(StatisticKind kind, const SortedUniforms& u) {
  StatCache cache(u.n());
  return scan_all({kind}, u, cache).t[0];
}

double pool(const std::vector<double>& values, PoolingMode mode) {
  switch (mode) {
    case PoolingMode::None:
      return values.front();
    case PoolingMode::Avg: {
      NeumaierSum s;
      for (double v : values) s.add(v);
      return s.value() / static_cast<double>(values.size());
    }
    case PoolingMode::Max:
      return *std::max_element(values.begin(), values.end());
  }
  throw Error("bad_selector", "unhandled pooling mode");
}

double circular_statistic(StatisticKind kind, PoolingMode mode,
                          const SortedUniforms& u) {
  if (mode == PoolingMode::None) return evaluate(kind, u);
  return pool(scan(kind, u), mode);
}

}  // namespace gof
