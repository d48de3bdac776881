#include "gof/asymptotics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "gof/covariance.hpp"
#include "gof/error.hpp"
#include "gof/special.hpp"

namespace gof {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleGuard = 1e-9;

double bisect_increasing(const std::function<double(double)>& f, double lo,
                         double hi, double flo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// One root in z = omega * L units for bracket index k of the given branch.
double sl_root_z(int k, SlBranch branch, double L) {
  double lo, hi;
  std::function<double(double)> f;
  if (branch == SlBranch::Cos) {
    // tan(z) = L/(2z) on [k pi, k pi + pi/2)
    lo = k * kPi + 1e-12;
    hi = k * kPi + kPi / 2.0 - kPoleGuard;
    f = [L](double z) { return std::tan(z) - L / (2.0 * z); };
  } else {
    // tan(z) = -2z/L on [k pi - pi/2, k pi)
    lo = k * kPi - kPi / 2.0 + kPoleGuard;
    hi = k * kPi - 1e-12;
    f = [L](double z) { return std::tan(z) + 2.0 * z / L; };
  }
  const double flo = f(lo), fhi = f(hi);
  if (!(flo < 0.0 && fhi > 0.0)) {
    throw Error("bracket_failure",
                "(k=" + std::to_string(k) + ", branch=" +
                    std::string(to_token(branch)) +
                    ") no sign change over the root bracket");
  }
  // 1e-12 absolute in omega translates to 1e-12 * L in z.
  const double tol = std::max(1e-12 * L, 1e-15);
  return bisect_increasing(f, lo, hi, flo, tol);
}

}  // namespace

const char* to_token(SlBranch b) {
  return b == SlBranch::Cos ? "cos" : "sin";
}

EigenSpectrum rn2_eigen_roots(double epsilon, int K) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error("probability_out_of_range",
                "epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
  }
  if (K < 1) throw Error("empty_spectrum", "root count K must be >= 1");
  const double L = std::log((1.0 - epsilon) / epsilon);
  EigenSpectrum sp;
  sp.epsilon = epsilon;
  // In z order the roots interleave as cos_0 < sin_1 < cos_1 < sin_2 < ...
  int k_cos = 0, k_sin = 1;
  bool take_cos = true;
  while (static_cast<int>(sp.lambdas.size()) < K) {
    const SlBranch br = take_cos ? SlBranch::Cos : SlBranch::Sin;
    const int k = take_cos ? k_cos++ : k_sin++;
    const double z = sl_root_z(k, br, L);
    const double omega = z / L;
    sp.omegas.push_back(omega);
    sp.lambdas.push_back(omega * omega + 0.25);
    sp.branches.push_back(br);
    take_cos = !take_cos;
  }
  sp.count = K;
  return sp;
}

Eigen::MatrixXd KernelMatrix::dense() const {
  const int N = n + 1;
  Eigen::MatrixXd out(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      out(i, j) = first_row[((j - i) % N + N) % N];
    }
  }
  return out;
}

KernelMatrix kernel_exact(int n, const std::vector<double>& psi,
                          std::string psi_label) {
  if (n < 1) throw Error("empty_sample", "kernel requires n >= 1");
  if (static_cast<int>(psi.size()) != n) {
    throw Error("index_order", "kernel weight family must have n entries");
  }
  KernelMatrix km;
  km.n = n;
  km.source = KernelSource::exact_finite;
  km.psi_label = std::move(psi_label);
  km.first_row.resize(n + 1);
  for (int d = 0; d <= n; ++d) {
    NeumaierSum acc;
    for (int k = 1; k <= n; ++k) {
      const double term = std::max(0, k - d) + std::max(0, k + d - (n + 1)) -
                          static_cast<double>(k) * k / (n + 1.0);
      acc.add(psi[k - 1] * term);
    }
    km.first_row[d] = acc.value() / ((n + 1.0) * (n + 1.0));
  }
  return km;
}

KernelMatrix kernel_W_exact(int n) {
  std::vector<double> psi(n);
  for (int k = 1; k <= n; ++k) {
    const double mu = k / (n + 1.0);
    psi[k - 1] = 1.0 / (mu * (1.0 - mu));
  }
  return kernel_exact(n, psi, "1/(mu(1-mu))");
}

KernelMatrix kernel_R_exact(int n) {
  std::vector<double> psi(n);
  for (int k = 1; k <= n; ++k) {
    const double mu = k / (n + 1.0);
    psi[k - 1] = 1.0 / (mu * mu * (1.0 - mu) * (1.0 - mu));
  }
  return kernel_exact(n, psi, "1/(mu(1-mu))^2");
}

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

KernelMatrix kernel_limit_W(int n) {
  if (n < 1) throw Error("empty_sample", "kernel requires n >= 1");
  KernelMatrix km;
  km.n = n;
  km.source = KernelSource::limit_W;
  km.psi_label = "1/(mu(1-mu))";
  km.first_row.resize(n + 1);
  const int N = n + 1;
  for (int k = 0; k <= n; ++k) {
    const double d = static_cast<double>(k) / N;
    km.first_row[k] = (2.0 * (xlogx(d) + xlogx(1.0 - d)) + 1.0) / N;
  }
  return km;
}

KernelMatrix kernel_limit_R(int n) {
  if (n < 1) throw Error("empty_sample", "kernel requires n >= 1");
  KernelMatrix km;
  km.n = n;
  km.source = KernelSource::limit_R;
  km.psi_label = "1/(mu(1-mu))^2";
  km.first_row.resize(n + 1);
  const int N = n + 1;
  const double h = harmonic(n);
  km.first_row[0] = 1.0 / (2.0 * N * h);
  for (int k = 1; k <= n; ++k) {
    const double d = static_cast<double>(k) / N;
    km.first_row[k] =
        ((2.0 * d - 1.0) * std::log(static_cast<double>(k) / (N - k)) - 1.0) /
        (N * h);
  }
  return km;
}

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex fftw_plan_mutex;
}  // namespace

CirculantSpectrum circulant_eigenvalues(const KernelMatrix& k) {
  const int N = k.n + 1;
  if (static_cast<int>(k.first_row.size()) != N) {
    throw Error("index_order", "kernel first row must have n+1 entries");
  }
  std::vector<double> in(k.first_row);
  std::vector<std::complex<double>> out(N / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_r2c_1d(N, in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
  CirculantSpectrum sp;
  sp.by_index.resize(N);
  // Symmetric first row => real spectrum, phi_{N-m} = phi_m.
  for (int m = 0; m <= N / 2; ++m) sp.by_index[m] = out[m].real();
  for (int m = N / 2 + 1; m < N; ++m) sp.by_index[m] = sp.by_index[N - m];
  sp.sorted = sp.by_index;
  std::sort(sp.sorted.begin(), sp.sorted.end(), std::greater<>());
  return sp;
}

double WeightedChiSqLaw::mean() const {
  NeumaierSum s;
  for (const double w : weights) s.add(w);
  return s.value();
}

std::vector<double> WeightedChiSqLaw::sample(const RunSeed& seed, int reps,
                                             int workers) const {
  if (reps < 1) throw Error("empty_sample", "sampling needs reps >= 1");
  if (weights.empty()) throw Error("empty_spectrum", "law has no weights");
  std::vector<double> out(reps);
  constexpr int kBlock = 4096;
  const int blocks = (reps + kBlock - 1) / kBlock;
  const int nw = std::max(1, std::min(workers, blocks));
  auto run_blocks = [&](int first) {
    for (int b = first; b < blocks; b += nw) {
      Stream st = substream(seed, "chisq_law", static_cast<std::uint64_t>(b));
      const int lo = b * kBlock;
      const int hi = std::min(reps, lo + kBlock);
      for (int r = lo; r < hi; ++r) {
        NeumaierSum acc;
        for (const double w : weights) {
          if (w == 0.0) break;  // weights are descending; zero tail is inert
          const double z = st.normal();
          acc.add(w * z * z);
        }
        out[r] = acc.value();
      }
    }
  };
  if (nw == 1) {
    run_blocks(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) pool.emplace_back(run_blocks, w);
    for (auto& t : pool) t.join();
  }
  return out;
}

LawEstimate WeightedChiSqLaw::cdf(double x, const RunSeed& seed,
                                  int reps) const {
  const std::vector<double> draws = sample(seed, reps);
  int count = 0;
  for (const double d : draws) count += (d <= x);
  LawEstimate est;
  est.value = static_cast<double>(count) / reps;
  est.se = std::sqrt(est.value * (1.0 - est.value) / reps);
  return est;
}

LawEstimate WeightedChiSqLaw::quantile(double p, const RunSeed& seed,
                                       int reps) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error("probability_out_of_range",
                "quantile level must lie in (0,1), got " + std::to_string(p));
  }
  std::vector<double> draws = sample(seed, reps);
  std::sort(draws.begin(), draws.end());
  const int r1 = std::min(
      reps, std::max(1, static_cast<int>(std::ceil(p * reps))));
  LawEstimate est;
  est.value = draws[r1 - 1];
  // SE of a sample quantile: sqrt(p(1-p)/reps)/f(q), with the density
  // estimated from the spread of nearby order statistics.
  const int h = std::max(1, reps / 200);
  const int rlo = std::max(1, r1 - h), rhi = std::min(reps, r1 + h);
  const double spread = draws[rhi - 1] - draws[rlo - 1];
  if (spread > 0.0) {
    const double density = static_cast<double>(rhi - rlo) / reps / spread;
    est.se = std::sqrt(p * (1.0 - p) / reps) / density;
  }
  return est;
}

WeightedChiSqLaw weighted_chisq_law(std::vector<double> weights,
                                    int truncation) {
  if (truncation < 1) {
    throw Error("empty_spectrum", "law truncation must be >= 1");
  }
  std::sort(weights.begin(), weights.end(), std::greater<>());
  if (static_cast<int>(weights.size()) > truncation) {
    weights.resize(truncation);
  }
  if (weights.empty()) throw Error("empty_spectrum", "no weights supplied");
  WeightedChiSqLaw law;
  const double tol = 1e-10 * std::max(1.0, std::abs(weights.front()));
  for (double& w : weights) {
    if (w < 0.0) {
      if (w < -tol) {
        throw Error("empty_spectrum",
                    "materially negative weight " + std::to_string(w) +
                        " cannot enter a weighted chi-square law");
      }
      w = 0.0;
      ++law.clipped;
    }
  }
  law.weights = std::move(weights);
  return law;
}

WeightedChiSqLaw weighted_chisq_law(const EigenSpectrum& spectrum,
                                    int truncation) {
  if (truncation < 1) {
    throw Error("empty_spectrum", "law truncation must be >= 1");
  }
  const int K = std::min<int>(truncation, spectrum.lambdas.size());
  std::vector<double> w(K);
  for (int k = 0; k < K; ++k) w[k] = 1.0 / spectrum.lambdas[k];
  return weighted_chisq_law(std::move(w), truncation);
}

double exact_null_mean(StatisticKind kind, int n) {
  if (n < 1) throw Error("empty_sample", "mean requires n >= 1");
  if (kind != StatisticKind::W2 && kind != StatisticKind::R2) {
    throw Error("bad_selector",
                "exact null mean available for w2 and r2 only");
  }
  const double psi_np1 = digamma(n + 1.0);
  NeumaierSum acc;
  for (int i = 1; i <= n; ++i) {
    const double mu = i / (n + 1.0);
    const double du = digamma(i) - psi_np1 - std::log(mu);
    const double d1 = digamma(n + 1.0 - i) - psi_np1 - std::log(1.0 - mu);
    if (kind == StatisticKind::W2) {
      acc.add(mu * du + (1.0 - mu) * d1);
    } else {
      acc.add(du / (1.0 - mu) + d1 / mu);
    }
  }
  const double scale =
      kind == StatisticKind::W2 ? -2.0 : -2.0 * rescale_constant(n);
  return scale * acc.value();
}

AsymptoticKind asymptotic_kind_from_token(std::string_view token) {
  if (token == "r2") return AsymptoticKind::R2;
  if (token == "w2_avg") return AsymptoticKind::W2_avg;
  if (token == "r2_avg") return AsymptoticKind::R2_avg;
  throw Error("bad_selector",
              "unknown asymptotic law '" + std::string(token) + "'");
}

const char* to_token(AsymptoticKind k) {
  switch (k) {
    case AsymptoticKind::R2:
      return "r2";
    case AsymptoticKind::W2_avg:
      return "w2_avg";
    default:
      return "r2_avg";
  }
}

namespace {

void rescale_to_mean(WeightedChiSqLaw& law, double target) {
  const double current = law.mean();
  if (!(current > 0.0)) {
    throw Error("empty_spectrum", "law mean must be positive to calibrate");
  }
  const double f = target / current;
  for (double& w : law.weights) w *= f;
}

// Epsilon such that the largest law weight C_n/lambda_1 matches the top
// eigenvalue of the finite-n Gaussian quadratic form C_n D^{1/2} Sigma_Y
// D^{1/2} (D = diag 1/(mu(1-mu))^2).  lambda_1 is increasing in epsilon with
// range (1/4, inf), so plain bisection applies.
double calibrated_epsilon(int n) {
  const CovarianceMatrix sigma = cov_Y_matrix(n);
  Eigen::VectorXd dsqrt(n);
  for (int i = 1; i <= n; ++i) {
    const double mu = i / (n + 1.0);
    dsqrt(i - 1) = 1.0 / (mu * (1.0 - mu));
  }
  const Eigen::MatrixXd m = rescale_constant(n) * dsqrt.asDiagonal() *
                            sigma.m * dsqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double top = es.eigenvalues().maxCoeff();
  const double target = rescale_constant(n) / top;
  if (!(target > 0.25)) {
    throw Error("bracket_failure",
                "(match_lambda1) target lambda_1 " + std::to_string(target) +
                    " below the spectral floor 1/4");
  }
  double lo = 1e-9, hi = 0.5 - 1e-9;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double l1 = rn2_eigen_roots(mid, 1).lambdas[0];
    (l1 < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

WeightedChiSqLaw asymptotic_null(AsymptoticKind kind, int n,
                                 const AsymptoticOptions& options,
                                 EigenSpectrum* spectrum_out) {
  if (n < 1) throw Error("empty_sample", "asymptotic law requires n >= 1");
  if (spectrum_out != nullptr) *spectrum_out = EigenSpectrum{};
  if (kind == AsymptoticKind::R2) {
    const int K = options.truncation.value_or(n);
    double eps = options.epsilon.value_or(1.0 / (2.0 * (n + 1)));
    if (options.match_lambda1) eps = calibrated_epsilon(n);
    const EigenSpectrum sp = rn2_eigen_roots(eps, K);
    if (spectrum_out != nullptr) *spectrum_out = sp;
    const double cn = rescale_constant(n);
    std::vector<double> w(sp.lambdas.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = cn / sp.lambdas[k];
    WeightedChiSqLaw law = weighted_chisq_law(std::move(w), K);
    if (options.mean_calibrated.value_or(false)) {
      rescale_to_mean(law, exact_null_mean(StatisticKind::R2, n));
    }
    return law;
  }

  const bool is_w = kind == AsymptoticKind::W2_avg;
  KernelMatrix km;
  double scale;
  if (options.kernel == KernelSource::exact_finite) {
    km = is_w ? kernel_W_exact(n) : kernel_R_exact(n);
    scale = (is_w ? 1.0 : rescale_constant(n)) / (n + 2.0);
  } else {
    // Any limit request resolves to the kind's own continuum family.  The
    // literal R-family limit row has materially negative eigenvalues, so the
    // law constructor below rejects it.
    km = is_w ? kernel_limit_W(n) : kernel_limit_R(n);
    scale = 1.0;
  }
  const CirculantSpectrum cs = circulant_eigenvalues(km);
  std::vector<double> w(cs.sorted);
  for (double& x : w) x *= scale;
  WeightedChiSqLaw law = weighted_chisq_law(std::move(w), n + 1);
  if (options.mean_calibrated.value_or(true)) {
    rescale_to_mean(law, exact_null_mean(
                             is_w ? StatisticKind::W2 : StatisticKind::R2, n));
  }
  return law;
}

}  // namespace gof
