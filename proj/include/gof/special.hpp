#pragma once

#include <cmath>
#include <cstddef>

namespace gof {

// Digamma psi(x) and trigamma psi1(x) for x > 0.
// Upward recurrence pushes the argument to >= 10, then an asymptotic
// (Bernoulli-number) tail is applied; relative accuracy ~1e-15, comfortably
// inside the 1e-13 target used by the covariance formulas.
double digamma(double x);
double trigamma(double x);

// Harmonic number H_n = sum_{k=1..n} 1/k (exact summation, used by the
// R-statistic rescaling constant C_n = 1 / (2 H_n)).
double harmonic(int n);

// Standard normal cdf via erfc, and its inverse (rational-approximation
// quantile, refined by one Halley step to push the roundtrip below 1e-14).
double norm_cdf(double x);
double norm_quantile(double p);

// Compensated (Neumaier) summation: the running error of the plain sum is
// carried in a second accumulator, so long index-ordered sums stay accurate
// for n up to 1e5 and beyond.
struct NeumaierSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }

  double value() const { return s + c; }
};

}  // namespace gof
