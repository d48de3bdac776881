#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gof {

// Clamping policy: every probability that feeds a logarithm downstream is
// pushed strictly inside (0,1). Exact 0/1 only arise through floating point
// (the null F is continuous), so the clamp is invisible statistically.
constexpr double kClampLo = 1e-12;
constexpr double kClampHi = 1.0 - 1e-12;

inline double clamp_unit(double u) {
  if (u < kClampLo) return kClampLo;
  if (u > kClampHi) return kClampHi;
  return u;
}

// A fully specified continuous null distribution F: cdf and inverse cdf as
// paired monotone maps. Builtins: uniform, normal(mu,sigma), exponential(rate),
// plus user-tabulated quantiles with monotone linear interpolation.
struct NullDistribution {
  std::function<double(double)> cdf;
  std::function<double(double)> inverse_cdf;
  std::string label;

  static NullDistribution uniform();
  static NullDistribution normal(double mu, double sigma);
  static NullDistribution exponential(double rate);
  // `quantiles` are strictly increasing values interpreted as the j/(m+1)
  // quantiles of F; the cdf/inverse pair interpolates linearly between them.
  static NullDistribution from_quantile_table(std::vector<double> quantiles);
  // Mini-grammar: uniform | normal:MU,SIGMA | exponential:RATE |
  // quantile-file:PATH.  Unknown spec -> "bad_selector".
  static NullDistribution parse(const std::string& spec);
};

// Sorted probability-integral-transformed sample U_(1) <= ... <= U_(n),
// clamped strictly inside (0,1).
struct SortedUniforms {
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
};

// The two index grids every statistic is built on:
// a_i = (i - 1/2)/n (plotting positions) and mu_i = i/(n+1) = E U_(i).
struct GridConstants {
  int n;
  std::vector<double> a;
  std::vector<double> mu;

  explicit GridConstants(int n_);
};

// Circular uniform spacings D_1..D_{n+1} with D_1 = U_(1), D_{n+1} = 1 - U_(n).
struct Spacings {
  std::vector<double> d;

  int n() const { return static_cast<int>(d.size()) - 1; }
};

// Map a raw sample through the null cdf and sort. Throws "empty_sample" /
// "non_finite_input".
SortedUniforms probability_integral_transform(const std::vector<double>& sample,
                                              const NullDistribution& null);

// Sort + clamp raw probabilities directly (the Monte Carlo path, where the
// draws are already uniforms).
SortedUniforms sorted_uniforms_from_probs(std::vector<double> probs);

Spacings spacings(const SortedUniforms& u);

// Circular shift: U^{(c)}_(i) = D_{c+1} + ... + D_{c+i} with indices mod n+1;
// c = 0 reproduces the input of `spacings`. Throws "shift_out_of_range".
SortedUniforms shifted_uniforms(const Spacings& d, int c);

}  // namespace gof
