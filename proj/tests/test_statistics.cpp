#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gof/error.hpp"
#include "gof/statistics.hpp"

using namespace gof;

namespace {

// Fixed sorted-uniform fixtures (generated once from a seeded draw, frozen as
// literals together with the expected statistic values from an independent
// summation oracle).
const std::vector<double> kU10 = {
    0.090200006542157096, 0.13423110362979696, 0.25298641840771707,
    0.2750020290626779,   0.2809319884322955,  0.54277092374642966,
    0.75621733629531374,  0.80344261526661342, 0.85941733097864559,
    0.99989050685971748};
const std::vector<double> kU20 = {
    0.01813028339622591,  0.02748027290222288, 0.050472659438903666,
    0.10453590222753772,  0.10669619400664665, 0.26408886203652893,
    0.26739915836387806,  0.31696140646606141, 0.42281942659631599,
    0.47535751938043269,  0.50636713271586642, 0.51111690992520697,
    0.55526591805681902,  0.60067231840092217, 0.61864931036089188,
    0.6988757856477027,   0.7361897753234582,  0.81083036822446242,
    0.82278471139909382,  0.84098397115844414};
const std::vector<double> kU50 = {
    0.037511693335439578, 0.11408685989323741, 0.13580626165779786,
    0.17630327173501303,  0.20351674850757207, 0.21189083476151416,
    0.21558203953340782,  0.23660616977664461, 0.24510519762064575,
    0.25117992086617535,  0.33945867564668653, 0.342708883046552,
    0.35581095320121325,  0.373438414489079,   0.40914721013883215,
    0.43202296459265754,  0.43703733069863659, 0.45511855247824162,
    0.46534949539114545,  0.47216139168351123, 0.53415958838402267,
    0.5474906645728268,   0.55170191219777065, 0.57197086423189902,
    0.57688202429265456,  0.59784776051066346, 0.62702741936954165,
    0.64297775384878864,  0.72314228777934597, 0.72451119732321267,
    0.73151652302461112,  0.77028529442442473, 0.77100296133757984,
    0.81530449148210959,  0.8252336206760742,  0.85187945923989161,
    0.88683939338643869,  0.89569694988036297, 0.8988251706811875,
    0.90119232563774099,  0.90663863444885306, 0.91202999584925604,
    0.91539557099663593,  0.93241417542917937, 0.94072575964938943,
    0.94894452441151678,  0.97304025708719855, 0.98375499683532275,
    0.98709171472082879,  0.99271343862814798};

SortedUniforms mu_grid(int n) {
  std::vector<double> v(n);
  for (int i = 1; i <= n; ++i) v[i - 1] = double(i) / (n + 1);
  return SortedUniforms{v};
}

SortedUniforms a_grid(int n) {
  std::vector<double> v(n);
  for (int i = 1; i <= n; ++i) v[i - 1] = (i - 0.5) / n;
  return SortedUniforms{v};
}

}  // namespace

TEST_CASE("statistic tokens roundtrip") {
  for (StatisticKind k : kAllStatistics)
    CHECK(statistic_from_token(to_token(k)) == k);
  CHECK_THROWS_WITH_AS(statistic_from_token("w3"),
                       doctest::Contains("bad_selector"), Error);
}

TEST_CASE("W2: zero at the mean grid, hand value at n=1") {
  CHECK(w2_statistic(mu_grid(3)) == doctest::Approx(0.0).epsilon(1e-14));
  // -2[ (1/2)ln(0.25/0.5) + (1/2)ln(0.75/0.5) ] = ln(4/3)
  CHECK(w2_statistic(SortedUniforms{{0.25}}) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("R2: symmetry point and hand value at n=1") {
  CHECK(r2_statistic(SortedUniforms{{0.5}}) == doctest::Approx(0.0).epsilon(1e-14));
  // C_1 = 1/2; value is -2 ln(3/4)
  CHECK(r2_statistic(SortedUniforms{{0.25}}) ==
        doctest::Approx(-2.0 * std::log(0.75)).epsilon(1e-14));
  CHECK(r2_statistic(mu_grid(7)) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("AD: both modes") {
  CHECK(ad_statistic(a_grid(2)) == doctest::Approx(0.0).epsilon(1e-14));
  // classic form at n=1, u=0.5: -1 - (ln 0.5 + ln 0.5) = 2 ln 2 - 1
  CHECK(ad_statistic(SortedUniforms{{0.5}}, AdMode::Classic) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));

  // The two modes track each other closely on null draws.
  std::mt19937_64 eng(123);
  const int reps = 1000, n = 50;
  std::vector<double> e2(reps), cl(reps);
  for (int r = 0; r < reps; ++r) {
    std::vector<double> raw(n);
    for (double& x : raw) x = (eng() >> 11) * 0x1.0p-53;
    auto u = sorted_uniforms_from_probs(raw);
    e2[r] = ad_statistic(u, AdMode::Eq2);
    cl[r] = ad_statistic(u, AdMode::Classic);
  }
  double m2 = 0, mc = 0;
  for (int r = 0; r < reps; ++r) { m2 += e2[r]; mc += cl[r]; }
  m2 /= reps; mc /= reps;
  double sxy = 0, sxx = 0, syy = 0;
  for (int r = 0; r < reps; ++r) {
    sxy += (e2[r] - m2) * (cl[r] - mc);
    sxx += (e2[r] - m2) * (e2[r] - m2);
    syy += (cl[r] - mc) * (cl[r] - mc);
  }
  CHECK(sxy / std::sqrt(sxx * syy) >= 0.99);
}

TEST_CASE("Zhang LR: hand values") {
  CHECK(zhang_lr_statistic(SortedUniforms{{0.5}}) ==
        doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
  double expect = -2.0 * (std::log(0.25) / 1.5 + std::log(0.75) / 0.5);
  CHECK(zhang_lr_statistic(SortedUniforms{{0.25, 0.75}}) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(2.99912).epsilon(1e-5));
}

TEST_CASE("CvM: floor at the plotting grid and hand value") {
  CHECK(cvm_statistic(a_grid(5)) == doctest::Approx(1.0 / 60.0).epsilon(1e-14));
  CHECK(cvm_statistic(SortedUniforms{{0.9}}) ==
        doctest::Approx(1.0 / 12.0 + 0.16).epsilon(1e-14));
}

TEST_CASE("KS: straddle grid and hand value") {
  CHECK(ks_statistic(a_grid(8)) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  CHECK(ks_statistic(SortedUniforms{{0.9}}) == doctest::Approx(0.9).epsilon(1e-14));

  // brute-force sup oracle on a seeded draw
  std::mt19937_64 eng(5);
  std::vector<double> raw(10);
  for (double& x : raw) x = (eng() >> 11) * 0x1.0p-53;
  auto u = sorted_uniforms_from_probs(raw);
  double sup = 0.0;
  const int n = u.n();
  for (int i = 0; i < n; ++i) {
    // empirical cdf jumps at each U_(i): check both one-sided gaps
    sup = std::max(sup, std::abs((i + 1.0) / n - u.values[i]));
    sup = std::max(sup, std::abs(u.values[i] - double(i) / n));
  }
  CHECK(ks_statistic(u) == doctest::Approx(sup).epsilon(1e-14));
}

TEST_CASE("frozen oracle values on seeded fixtures") {
  SortedUniforms u10{kU10}, u20{kU20}, u50{kU50};
  CHECK(w2_statistic(u10) == doctest::Approx(1.360184282363802e+00).epsilon(1e-12));
  CHECK(r2_statistic(u10) == doctest::Approx(2.406794832940068e+00).epsilon(1e-12));
  CHECK(ad_statistic(u10) == doctest::Approx(7.707773256489148e-01).epsilon(1e-12));
  CHECK(ad_statistic(u10, AdMode::Classic) ==
        doctest::Approx(8.473570397244856e-01).epsilon(1e-12));
  CHECK(zhang_lr_statistic(u10) ==
        doctest::Approx(3.840708800364754e+00).epsilon(1e-12));
  CHECK(cvm_statistic(u10) == doctest::Approx(6.118388282430368e-02).epsilon(1e-12));
  CHECK(ks_statistic(u10) == doctest::Approx(2.190680115677045e-01).epsilon(1e-12));

  CHECK(w2_statistic(u20) == doctest::Approx(8.402701782636248e-01).epsilon(1e-12));
  CHECK(r2_statistic(u20) == doctest::Approx(1.182098607343117e+00).epsilon(1e-12));
  CHECK(ad_statistic(u20) == doctest::Approx(8.347843091368717e-01).epsilon(1e-12));
  CHECK(ad_statistic(u20, AdMode::Classic) ==
        doctest::Approx(8.788485733474687e-01).epsilon(1e-12));
  CHECK(zhang_lr_statistic(u20) ==
        doctest::Approx(3.590568799945142e+00).epsilon(1e-12));
  CHECK(cvm_statistic(u20) == doctest::Approx(1.101318625976473e-01).epsilon(1e-12));
  CHECK(ks_statistic(u20) == doctest::Approx(1.590160288415559e-01).epsilon(1e-12));

  CHECK(w2_statistic(u50) == doctest::Approx(3.340726702049498e+00).epsilon(1e-12));
  CHECK(r2_statistic(u50) == doctest::Approx(2.756669821159357e+00).epsilon(1e-12));
  CHECK(ad_statistic(u50) == doctest::Approx(3.304712031649679e+00).epsilon(1e-12));
  CHECK(ad_statistic(u50, AdMode::Classic) ==
        doctest::Approx(3.325391835700344e+00).epsilon(1e-12));
  CHECK(zhang_lr_statistic(u50) ==
        doctest::Approx(3.558569298937091e+00).epsilon(1e-12));
  CHECK(cvm_statistic(u50) == doctest::Approx(5.342846412484831e-01).epsilon(1e-12));
  CHECK(ks_statistic(u50) == doctest::Approx(1.668393933864387e-01).epsilon(1e-12));
}

TEST_CASE("summands Y: zeros, hand value, weighted-sum identities") {
  auto y0 = summands_Y(mu_grid(6));
  for (double v : y0) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));

  auto y1 = summands_Y(SortedUniforms{{0.25}});
  CHECK(y1[0] == doctest::Approx(-0.25 * std::log(0.75)).epsilon(1e-14));

  // frozen oracle values for the n=10 fixture
  const std::vector<double> kY10 = {
      5.0516773040895798e-07,  0.0026530080089907076, 0.00040228112229758438,
      0.0086130044225732269,   0.033714849502412575,  7.1972090189401962e-06,
      0.016475966386383184,    0.0066976367353884653, 0.0019444996425585313,
      0.086697920015042451};
  SortedUniforms u10{kU10};
  auto y10 = summands_Y(u10);
  for (int i = 0; i < 10; ++i)
    CHECK(y10[i] == doctest::Approx(kY10[i]).epsilon(1e-12));

  // sum w_i Y_i with w = 1/(mu(1-mu)) recovers W2; with the C_n-scaled
  // inverse-square weights it recovers R2.
  const int n = 10;
  double sw = 0.0, sr = 0.0;
  const double cn = rescale_constant(n);
  for (int i = 1; i <= n; ++i) {
    double mu = double(i) / (n + 1);
    sw += y10[i - 1] / (mu * (1.0 - mu));
    sr += cn * y10[i - 1] / (mu * mu * (1.0 - mu) * (1.0 - mu));
  }
  CHECK(sw == doctest::Approx(w2_statistic(u10)).epsilon(1e-12));
  CHECK(sr == doctest::Approx(r2_statistic(u10)).epsilon(1e-12));
}

TEST_CASE("reflection symmetry u -> reverse(1-u)") {
  SortedUniforms u{kU20};
  std::vector<double> rev(kU20.size());
  for (size_t i = 0; i < kU20.size(); ++i)
    rev[i] = 1.0 - kU20[kU20.size() - 1 - i];
  SortedUniforms ur{rev};
  CHECK(w2_statistic(ur) == doctest::Approx(w2_statistic(u)).epsilon(1e-12));
  CHECK(r2_statistic(ur) == doctest::Approx(r2_statistic(u)).epsilon(1e-12));
  CHECK(ad_statistic(ur) == doctest::Approx(ad_statistic(u)).epsilon(1e-12));
  CHECK(cvm_statistic(ur) == doctest::Approx(cvm_statistic(u)).epsilon(1e-12));
  CHECK(ks_statistic(ur) == doctest::Approx(ks_statistic(u)).epsilon(1e-12));
}

TEST_CASE("W2/R2 are minimized at the mean grid") {
  const int n = 9;
  auto base = mu_grid(n);
  CHECK(w2_statistic(base) == doctest::Approx(0.0).epsilon(1e-13));
  for (int j : {0, 4, 8}) {
    for (double eps : {-0.02, 0.015, 0.04}) {
      auto pert = base;
      pert.values[j] += eps;
      // keep ordering valid
      std::sort(pert.values.begin(), pert.values.end());
      CHECK(w2_statistic(pert) > 1e-8);
      CHECK(r2_statistic(pert) > 1e-8);
    }
  }
}

TEST_CASE("KS second branch is monotone in the top order statistic") {
  SortedUniforms u{kU10};
  double base = u.values[9] - 9.0 / 10.0;
  for (double v : {0.9995, 0.9999, 1.0 - 1e-12}) {
    auto mod = u;
    mod.values[9] = v;
    CHECK(ks_statistic(mod) >= base);
    base = std::max(base, v - 0.9);
  }
}
