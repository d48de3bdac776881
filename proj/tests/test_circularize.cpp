#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "gof/circularize.hpp"
#include "gof/error.hpp"

using namespace gof;

namespace {

SortedUniforms random_sorted(std::mt19937_64& eng, int n) {
  std::vector<double> raw(n);
  for (double& x : raw) x = (eng() >> 11) * 0x1.0p-53;
  return sorted_uniforms_from_probs(raw);
}

}  // namespace

TEST_CASE("pooling tokens") {
  CHECK(pooling_from_token("cs0") == PoolingMode::None);
  CHECK(pooling_from_token("cs1") == PoolingMode::Avg);
  CHECK(pooling_from_token("cs_avg") == PoolingMode::Avg);
  CHECK(pooling_from_token("cs2") == PoolingMode::Max);
  CHECK(pooling_from_token("cs_max") == PoolingMode::Max);
  CHECK_THROWS_WITH_AS(pooling_from_token("cs9"),
                       doctest::Contains("bad_selector"), Error);
}

TEST_CASE("scan at n=1: the two spacing orders give equal W2 values") {
  SortedUniforms u{{0.3}};
  auto t = scan(StatisticKind::W2, u);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == doctest::Approx(w2_statistic(u)).epsilon(1e-15));
  // spacings (0.3, 0.7) rotated -> sample (0.7); W2 is reflection-symmetric
  CHECK(t[1] == doctest::Approx(w2_statistic(SortedUniforms{{0.7}})).epsilon(1e-15));
  CHECK(t[0] == doctest::Approx(t[1]).epsilon(1e-12));
}

TEST_CASE("scan entry 0 is the plain statistic") {
  std::mt19937_64 eng(31);
  auto u = random_sorted(eng, 12);
  for (StatisticKind k : kAllStatistics) {
    auto t = scan(k, u);
    CHECK(t[0] == doctest::Approx(evaluate(k, u)).epsilon(1e-14));
  }
}

TEST_CASE("scan entries match independently recomputed shifted statistics") {
  std::mt19937_64 eng(77);
  auto u = random_sorted(eng, 5);
  auto d = spacings(u);
  for (StatisticKind k : kAllStatistics) {
    auto t = scan(k, u);
    REQUIRE(t.size() == 6);
    for (int c = 0; c <= 5; ++c) {
      double direct = evaluate(k, shifted_uniforms(d, c));
      CHECK(t[c] == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("pool: hand values and order properties") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(pool(v, PoolingMode::Avg) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(pool(v, PoolingMode::Max) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(pool(v, PoolingMode::None) == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<double> c(7, 3.25);
  CHECK(pool(c, PoolingMode::Avg) == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(pool(c, PoolingMode::Max) == doctest::Approx(3.25).epsilon(1e-15));

  std::mt19937_64 eng(42);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> r(5);
    for (double& x : r) x = (eng() >> 11) * 0x1.0p-53;
    double mn = *std::min_element(r.begin(), r.end());
    CHECK(pool(r, PoolingMode::Max) >= pool(r, PoolingMode::Avg));
    CHECK(pool(r, PoolingMode::Avg) >= mn);
  }
}

TEST_CASE("circular statistic: n=2 full enumeration") {
  SortedUniforms u{{1.0 / 3, 2.0 / 3}};  // the n=2 mean grid
  auto d = spacings(u);
  for (StatisticKind k : {StatisticKind::W2, StatisticKind::R2,
                          StatisticKind::CvM, StatisticKind::KS}) {
    double t0 = evaluate(k, shifted_uniforms(d, 0));
    double t1 = evaluate(k, shifted_uniforms(d, 1));
    double t2 = evaluate(k, shifted_uniforms(d, 2));
    double avg = (t0 + t1 + t2) / 3.0;
    double mx = std::max({t0, t1, t2});
    CHECK(circular_statistic(k, PoolingMode::Avg, u) ==
          doctest::Approx(avg).epsilon(1e-13));
    CHECK(circular_statistic(k, PoolingMode::Max, u) ==
          doctest::Approx(mx).epsilon(1e-13));
  }
  // the mean grid has equal spacings: every shift reproduces the same sample
  CHECK(circular_statistic(StatisticKind::W2, PoolingMode::Avg, u) ==
        doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("circular statistic None mode is the base statistic") {
  std::mt19937_64 eng(8);
  auto u = random_sorted(eng, 9);
  for (StatisticKind k : kAllStatistics)
    CHECK(circular_statistic(k, PoolingMode::None, u) ==
          doctest::Approx(evaluate(k, u)).epsilon(1e-14));
}

TEST_CASE("max dominance over the unpooled statistic") {
  std::mt19937_64 eng(14);
  for (int rep = 0; rep < 200; ++rep) {
    auto u = random_sorted(eng, 8);
    for (StatisticKind k : kAllStatistics)
      CHECK(circular_statistic(k, PoolingMode::Max, u) >=
            evaluate(k, u) - 1e-14);
  }
}

TEST_CASE("pooled statistics are invariant under spacing rotations") {
  std::mt19937_64 eng(2024);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(eng() % 14);
    auto u = random_sorted(eng, n);
    auto d = spacings(u);
    const int r = static_cast<int>(eng() % (n + 1));
    std::vector<double> rot(n + 1);
    for (int i = 0; i <= n; ++i) rot[i] = d.d[(i + r) % (n + 1)];
    auto u_rot = shifted_uniforms(Spacings{rot}, 0);

    for (StatisticKind k : {StatisticKind::W2, StatisticKind::R2,
                            StatisticKind::AD, StatisticKind::KS}) {
      CHECK(circular_statistic(k, PoolingMode::Avg, u_rot) ==
            doctest::Approx(circular_statistic(k, PoolingMode::Avg, u))
                .epsilon(1e-12));
      CHECK(circular_statistic(k, PoolingMode::Max, u_rot) ==
            doctest::Approx(circular_statistic(k, PoolingMode::Max, u))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("scan_all agrees with per-kind scans") {
  std::mt19937_64 eng(555);
  auto u = random_sorted(eng, 11);
  StatCache cache(11);
  std::vector<StatisticKind> kinds(std::begin(kAllStatistics),
                                   std::end(kAllStatistics));
  auto table = scan_all(kinds, u, cache);
  for (size_t s = 0; s < kinds.size(); ++s) {
    auto single = scan(kinds[s], u);
    for (size_t c = 0; c < single.size(); ++c)
      CHECK(table.t[s][c] == doctest::Approx(single[c]).epsilon(1e-14));
  }
}
