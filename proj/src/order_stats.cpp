#include "gof/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "gof/error.hpp"
#include "gof/special.hpp"

namespace gof {

NullDistribution NullDistribution::uniform() {
  NullDistribution f;
  f.label = "uniform";
  f.cdf = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x;
  };
  f.inverse_cdf = [](double p) { return p; };
  return f;
}

NullDistribution NullDistribution::normal(double mu, double sigma) {
  NullDistribution f;
  std::ostringstream lab;
  lab << "normal(" << mu << "," << sigma << ")";
  f.label = lab.str();
  f.cdf = [mu, sigma](double x) { return norm_cdf((x - mu) / sigma); };
  f.inverse_cdf = [mu, sigma](double p) { return mu + sigma * norm_quantile(p); };
  return f;
}

NullDistribution NullDistribution::exponential(double rate) {
  NullDistribution f;
  std::ostringstream lab;
  lab << "exponential(" << rate << ")";
  f.label = lab.str();
  f.cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
  f.inverse_cdf = [rate](double p) { return -std::log1p(-p) / rate; };
  return f;
}

NullDistribution NullDistribution::from_quantile_table(std::vector<double> q) {
  const int m = static_cast<int>(q.size());
  if (m < 2) throw Error("io_error", "quantile table needs at least 2 values");
  for (int j = 1; j < m; ++j) {
    if (!(q[j] > q[j - 1]))
      throw Error("io_error", "quantile table must be strictly increasing");
  }
  // Knots (x_j, p_j) with p_j = j/(m+1); extend linearly with the edge slopes
  // so the cdf actually reaches 0 and 1 and the pair stays invertible.
  auto knots = std::make_shared<std::vector<std::pair<double, double>>>();
  const double p1 = 1.0 / (m + 1);
  {
    double slope_lo = (q[1] - q[0]) * (m + 1);  // dx/dp at the bottom
    double slope_hi = (q[m - 1] - q[m - 2]) * (m + 1);
    knots->push_back({q[0] - slope_lo * p1, 0.0});
    for (int j = 0; j < m; ++j) knots->push_back({q[j], (j + 1) * p1});
    knots->push_back({q[m - 1] + slope_hi * p1, 1.0});
  }
  NullDistribution f;
  f.label = "quantile-table(" + std::to_string(m) + ")";
  f.cdf = [knots](double x) {
    const auto& k = *knots;
    if (x <= k.front().first) return 0.0;
    if (x >= k.back().first) return 1.0;
    auto it = std::upper_bound(k.begin(), k.end(), x,
                               [](double v, const auto& kn) { return v < kn.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double t = (x - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
  };
  f.inverse_cdf = [knots](double p) {
    const auto& k = *knots;
    if (p <= 0.0) return k.front().first;
    if (p >= 1.0) return k.back().first;
    auto it = std::upper_bound(k.begin(), k.end(), p,
                               [](double v, const auto& kn) { return v < kn.second; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double t = (p - lo.second) / (hi.second - lo.second);
    return lo.first + t * (hi.first - lo.first);
  };
  return f;
}

NullDistribution NullDistribution::parse(const std::string& spec) {
  if (spec == "uniform") return uniform();
  auto colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "normal") {
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw Error("bad_selector", "normal null needs MU,SIGMA: " + spec);
    try {
      double mu = std::stod(rest.substr(0, comma));
      double sigma = std::stod(rest.substr(comma + 1));
      if (!(sigma > 0.0)) throw Error("bad_selector", "sigma must be > 0");
      return normal(mu, sigma);
    } catch (const std::invalid_argument&) {
      throw Error("bad_selector", "unparsable normal null: " + spec);
    }
  }
  if (head == "exponential") {
    try {
      double rate = std::stod(rest);
      if (!(rate > 0.0)) throw Error("bad_selector", "rate must be > 0");
      return exponential(rate);
    } catch (const std::invalid_argument&) {
      throw Error("bad_selector", "unparsable exponential null: " + spec);
    }
  }
  if (head == "quantile-file") {
    std::ifstream in(rest);
    if (!in) throw Error("io_error", "cannot open quantile file: " + rest);
    std::vector<double> q;
    double v;
    while (in >> v) q.push_back(v);
    return from_quantile_table(std::move(q));
  }
  throw Error("bad_selector", "unknown null distribution spec: " + spec);
}

GridConstants::GridConstants(int n_) : n(n_), a(n_), mu(n_) {
  for (int i = 1; i <= n; ++i) {
    a[i - 1] = (i - 0.5) / n;
    mu[i - 1] = static_cast<double>(i) / (n + 1);
  }
}

SortedUniforms probability_integral_transform(const std::vector<double>& sample,
                                              const NullDistribution& null) {
  if (sample.empty()) throw Error("empty_sample", "no observations");
  std::vector<double> u(sample.size());
  for (size_t i = 0; i < sample.size(); ++i) {
    if (!std::isfinite(sample[i]))
      throw Error("non_finite_input",
                  "observation " + std::to_string(i) + " is not finite");
    u[i] = null.cdf(sample[i]);
  }
  return sorted_uniforms_from_probs(std::move(u));
}

SortedUniforms sorted_uniforms_from_probs(std::vector<double> probs) {
  if (probs.empty()) throw Error("empty_sample", "no observations");
  std::sort(probs.begin(), probs.end());
  for (double& v : probs) v = clamp_unit(v);
  return SortedUniforms{std::move(probs)};
}

Spacings spacings(const SortedUniforms& u) {
  const int n = u.n();
  std::vector<double> d(n + 1);
  d[0] = u.values[0];
  for (int i = 1; i < n; ++i) d[i] = u.values[i] - u.values[i - 1];
  d[n] = 1.0 - u.values[n - 1];
  return Spacings{std::move(d)};
}

SortedUniforms shifted_uniforms(const Spacings& d, int c) {
  const int n = d.n();
  if (c < 0 || c > n)
    throw Error("shift_out_of_range",
                "shift " + std::to_string(c) + " outside 0.." + std::to_string(n));
  std::vector<double> u(n);
  NeumaierSum acc;
  for (int i = 1; i <= n; ++i) {
    acc.add(d.d[(c + i - 1) % (n + 1)]);  // D_{c+i}, 1-based
    u[i - 1] = clamp_unit(acc.value());
  }
  // Clamping preserves monotonicity; enforce it exactly against fp jitter.
  for (int i = 1; i < n; ++i)
    if (u[i] < u[i - 1]) u[i] = u[i - 1];
  return SortedUniforms{std::move(u)};
}

}  // namespace gof
