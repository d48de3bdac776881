#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gof/rng.hpp"
#include "gof/statistics.hpp"

namespace gof {

enum class SlBranch { Cos, Sin };

const char* to_token(SlBranch b);  // "cos" / "sin"

// Sturm-Liouville eigenvalues lambda_k = omega_k^2 + 1/4 of the R-statistic
// limit law on (eps, 1-eps).  Roots are indexed in increasing lambda order
// and tagged with the branch of the defining equation they solve:
//   cos branch: tan(omega L) =  L/(2 omega)   on [k pi,        k pi + pi/2)
//   sin branch: tan(omega L) = -2 omega / L   on [k pi - pi/2, k pi)
// with L = ln((1-eps)/eps) and the intervals read in z = omega L units.
struct EigenSpectrum {
  std::vector<double> lambdas;  // strictly increasing
  std::vector<double> omegas;
  std::vector<SlBranch> branches;
  double epsilon = 0.0;
  int count = 0;
};

// First K roots across both branches, found by bisection on sign-checked
// brackets (1e-12 absolute in omega, 1e-9 guard bands at the tan poles).
// Bad epsilon -> "probability_out_of_range"; K < 1 -> "empty_spectrum";
// a bracket without a sign change -> "bracket_failure" naming (k, branch).
EigenSpectrum rn2_eigen_roots(double epsilon, int K);

enum class KernelSource { exact_finite, limit_W, limit_R };

// Symmetric circulant kernel of the average-pooled quadratic approximation,
// stored as its first row c_0..c_n (so entry (i,j) is c_{(j-i) mod (n+1)}).
struct KernelMatrix {
  std::vector<double> first_row;
  int n = 0;
  KernelSource source = KernelSource::exact_finite;
  std::string psi_label;

  Eigen::MatrixXd dense() const;
};

// Exact finite-n kernel for a weight family psi_1..psi_n:
//   c_d = (1/(n+1)^2) sum_k psi_k [max(0,k-d) + max(0,k+d-(n+1)) - k^2/(n+1)]
// With psi_k = 1/(mu_k(1-mu_k)) the trace is (n+1)c_0 = n; with
// psi_k = 1/(mu_k(1-mu_k))^2 it is (n+1)c_0 = 2(n+1) sum 1/k.
KernelMatrix kernel_exact(int n, const std::vector<double>& psi,
                          std::string psi_label = "custom");
KernelMatrix kernel_W_exact(int n);  // psi_k = 1/(mu_k(1-mu_k))
KernelMatrix kernel_R_exact(int n);  // psi_k = 1/(mu_k(1-mu_k))^2

// Continuum-limit first rows.  W family: kappa(d) = 2[d ln d
// + (1-d)ln(1-d)] + 1 at d = k/(n+1), divided by n+1 (c_0 = 1/(n+1)).
// R family, literal normalization: c_0 = 1/(2(n+1) sum 1/k),
// c_k = ((2k/(n+1)-1) ln(k/(n+1-k)) - 1)/((n+1) sum 1/k).
KernelMatrix kernel_limit_W(int n);
KernelMatrix kernel_limit_R(int n);

// Eigenvalues phi_m = sum_d c_d cos(2 pi d m/(n+1)) of a symmetric circulant,
// via a real-to-complex FFT.  by_index is ordered by frequency m; sorted is
// the same values in descending order.
struct CirculantSpectrum {
  std::vector<double> by_index;
  std::vector<double> sorted;
};

CirculantSpectrum circulant_eigenvalues(const KernelMatrix& k);

struct LawEstimate {
  double value = 0.0;
  double se = 0.0;  // Monte Carlo standard error
};

// The law sum_i w_i X_i^2 with X_i^2 iid chi-square(1).  Weights are kept in
// descending order; tiny negative inputs (circulant roundoff) are clipped to
// zero and counted.  Evaluation is seeded Monte Carlo.
struct WeightedChiSqLaw {
  std::vector<double> weights;
  int clipped = 0;

  double mean() const;  // sum of weights

  // reps draws, sharded into fixed blocks with per-block substreams; the
  // result does not depend on the worker count.
  std::vector<double> sample(const RunSeed& seed, int reps,
                             int workers = 1) const;
  LawEstimate cdf(double x, const RunSeed& seed, int reps) const;
  LawEstimate quantile(double p, const RunSeed& seed, int reps) const;
};

// truncation < 1 -> "empty_spectrum"; materially negative weights (beyond
// roundoff) are rejected with the same code.
WeightedChiSqLaw weighted_chisq_law(std::vector<double> weights,
                                    int truncation);
// Convenience: weights 1/lambda_k from a Sturm-Liouville spectrum.
WeightedChiSqLaw weighted_chisq_law(const EigenSpectrum& spectrum,
                                    int truncation);

// Exact null mean of W2 or R2 (identical for their average-pooled versions,
// since every scan entry is distributed as the base statistic):
//   E[W2] = -2 sum_i [mu_i(psi(i)-psi(n+1)-ln mu_i)
//                     + (1-mu_i)(psi(n+1-i)-psi(n+1)-ln(1-mu_i))]
// and the C_n-weighted analog for R2.  Other kinds -> "bad_selector".
double exact_null_mean(StatisticKind kind, int n);

enum class AsymptoticKind { R2, W2_avg, R2_avg };

AsymptoticKind asymptotic_kind_from_token(std::string_view token);
const char* to_token(AsymptoticKind k);

struct AsymptoticOptions {
  // Kernel source for the pooled kinds.  The literal limit_R row carries the
  // small-sample normalization defect discussed in the README; exact_finite
  // is the default for both pooled families.
  KernelSource kernel = KernelSource::exact_finite;
  // Rescale the law weights so their sum equals the exact finite-n mean of
  // the target statistic.  Defaults: false for R2 (the literal truncated-law
  // construction), true for the pooled kinds.
  std::optional<bool> mean_calibrated;
  // R2 only: calibrate epsilon so that the largest law weight C_n/lambda_1
  // matches the top eigenvalue of the finite-n Gaussian approximation
  // (the covariance-based quadratic form), instead of eps = 1/(2(n+1)).
  bool match_lambda1 = false;
  std::optional<double> epsilon;  // R2 only; default 1/(2(n+1))
  std::optional<int> truncation;  // R2 only; default K = n
};

// Asymptotic null law of the named statistic at sample size n:
//   R2     -> weights C_n/lambda_k from rn2_eigen_roots
//   W2_avg -> kernel spectrum scaled by 1/(n+2)        (exact source)
//   R2_avg -> kernel spectrum scaled by C_n/(n+2)      (exact source)
// Limit sources use the limit-row eigenvalues unscaled.
// If spectrum_out is given it receives the Sturm-Liouville spectrum actually
// used (R2 kind only; pooled kinds leave it empty with count = 0).
WeightedChiSqLaw asymptotic_null(AsymptoticKind kind, int n,
                                 const AsymptoticOptions& options = {},
                                 EigenSpectrum* spectrum_out = nullptr);

}  // namespace gof
