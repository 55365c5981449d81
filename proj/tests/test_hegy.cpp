#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hegy/errors.hpp"
#include "hegy/generation.hpp"
#include "hegy/hegy_test.hpp"
#include "hegy/rng.hpp"
#include "stat_utils.hpp"

using namespace hegy;

namespace {

QuarterlySeries seasonal_random_walk(int cycles, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  std::vector<double> y(static_cast<std::size_t>(4 * cycles));
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double prev = t >= 4 ? y[t - 4] : 0.0;
    y[t] = prev + standard_normal(rng);
  }
  return QuarterlySeries(std::move(y), 1);
}

QuarterlySeries stationary_ar1(int cycles, double coefficient, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  std::vector<double> y(static_cast<std::size_t>(4 * cycles));
  double prev = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    prev = coefficient * prev + standard_normal(rng);
    y[t] = prev;
  }
  return QuarterlySeries(std::move(y), 1);
}

bool same_statistics(const HegyStatistics& a, const HegyStatistics& b) {
  return a.pi_hat == b.pi_hat && a.t == b.t && a.f12 == b.f12 && a.f34 == b.f34 &&
         a.f134 == b.f134 && a.f234 == b.f234 && a.f1234 == b.f1234 &&
         a.retained_lags == b.retained_lags;
}

}  // namespace

TEST_CASE("hypothesis parsing accepts exactly the seven sets") {
  for (const char* text : {"1", "2", "12", "34", "134", "234", "1234"}) {
    const Hypothesis h = Hypothesis::from_string(text);
    CHECK(h.name() == text);
  }
  CHECK_THROWS_AS(Hypothesis::from_string("3"), ConfigurationError);
  CHECK_THROWS_AS(Hypothesis::from_string("4"), ConfigurationError);
  CHECK_THROWS_AS(Hypothesis::from_string("13"), ConfigurationError);
  CHECK_THROWS_AS(Hypothesis::from_string("124"), ConfigurationError);
  CHECK_THROWS_AS(Hypothesis::from_string(""), ConfigurationError);
  CHECK_THROWS_AS(Hypothesis::from_string("15"), ConfigurationError);
}

TEST_CASE("decision directions") {
  const auto h1 = Hypothesis::from_string("1");
  auto rule = null_directions(h1);
  CHECK(rule.kind == StatisticKind::T);
  CHECK(rule.tail == Tail::Left);
  rule = null_directions(h1, StatisticKind::Pi);
  CHECK(rule.kind == StatisticKind::Pi);
  CHECK(rule.tail == Tail::Left);

  rule = null_directions(Hypothesis::from_string("34"));
  CHECK(rule.kind == StatisticKind::F);
  CHECK(rule.tail == Tail::Right);
  rule = null_directions(Hypothesis::from_string("1234"));
  CHECK(rule.kind == StatisticKind::F);
  CHECK(rule.tail == Tail::Right);

  CHECK(statistic_name(h1, StatisticKind::T) == "t1");
  CHECK(statistic_name(Hypothesis::from_string("2"), StatisticKind::Pi) == "pi2");
  CHECK(statistic_name(Hypothesis::from_string("34"), StatisticKind::F) == "F34");
}

TEST_CASE("augmented with k = 0 and no pruning equals unaugmented") {
  for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
    const auto y = seasonal_random_walk(30, seed);
    const auto a = augmented_hegy(y, 0, false);
    const auto b = unaugmented_hegy(y);
    CHECK(same_statistics(a, b));
    CHECK(a.k_used == 0);
    CHECK(b.retained_lags.empty());
  }
}

TEST_CASE("stationary minus-one channel drives t2 strongly negative") {
  // AR(1) with coefficient -0.9: a strong period-2 cycle but no root at
  // -1, so the pi2 < 0 channel is active.
  Rng rng = make_stream(41, 0);
  std::vector<double> v(1000);
  double prev = 0.0;
  for (auto& x : v) {
    prev = -0.9 * prev + standard_normal(rng);
    x = prev;
  }
  const auto stats = unaugmented_hegy(QuarterlySeries(v, 1));
  CHECK(stats.t[1] < -4.0);
  CHECK(stats.pi_hat[1] < 0.0);
}

TEST_CASE("t1 under the seasonal random-walk null matches the Dickey-Fuller calibration") {
  // Oracle first: simulate the DF t limit and confirm the 5% quantile
  // that the rejection check below relies on.
  const auto df = testutil::dickey_fuller_t_sample(2000, 4000, 1234);
  const double q05 = testutil::quantile(df, 0.05);
  CHECK(q05 == doctest::Approx(-1.95).epsilon(0.04));

  const int reps = 1000;
  int rejections = 0;
  for (int r = 0; r < reps; ++r) {
    const auto y = seasonal_random_walk(2000, 90000 + static_cast<std::uint64_t>(r));
    const auto stats = augmented_hegy(y, 0, false);
    if (stats.t[0] < -1.95) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / reps;
  CHECK(std::abs(rate - 0.05) <= 0.02);
}

TEST_CASE("stationary AR(1) pushes pi1 below zero") {
  int negative = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto y = stationary_ar1(500, 0.5, 50000 + static_cast<std::uint64_t>(r));
    const auto stats = augmented_hegy(y, 0, false);
    if (stats.pi_hat[0] < 0.0) ++negative;
  }
  CHECK(negative >= 198);  // >= 99% of 200
}

TEST_CASE("seasonal regression with k = 0 matches per-season normal equations") {
  const auto y = seasonal_random_walk(40, 77);
  const auto fit = seasonal_regression(y, 0, false, std::numeric_limits<double>::infinity(), 0.0);

  for (int s = 1; s <= 4; ++s) {
    std::vector<std::vector<double>> cols(4);
    std::vector<double> dep;
    for (long t = 5; t <= y.length(); ++t) {
      if (y.season_of(t) != s) continue;
      const double a = y.at(t - 1), b = y.at(t - 2), c = y.at(t - 3), d = y.at(t - 4);
      cols[0].push_back(a + b + c + d);
      cols[1].push_back(-(a - b + c - d));
      cols[2].push_back(-(b - d));
      cols[3].push_back(-(a - c));
      dep.push_back(y.at(t) - y.at(t - 4));
    }
    const auto beta = testutil::normal_equations_solve(cols, dep);
    for (int j = 0; j < 4; ++j)
      CHECK(fit.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(s - 1)] ==
            doctest::Approx(beta[static_cast<std::size_t>(j)]).epsilon(1e-9));
  }
}

TEST_CASE("noiseless periodic recursion is fitted exactly") {
  // Build a series that satisfies the seasonal equation with zero error,
  // then check the per-season fits reproduce it with zero residuals.
  SeasonalFit truth;
  truth.k = 1;
  truth.augmented = true;
  truth.phi.assign(1, {0.3, 0.1, -0.2, 0.25});
  for (int j = 0; j < 4; ++j)
    for (int s = 0; s < 4; ++s)
      truth.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
          (j == 3 ? 0.04 : -0.05) * (1.0 + 0.2 * s);

  Rng rng = make_stream(83, 0);
  std::vector<double> presample(5);
  for (auto& v : presample) v = standard_normal(rng);
  const std::vector<double> zero_innovations(48, 0.0);
  const auto y = generate_bootstrap_series(truth, zero_innovations, false, 1, presample);

  const auto fit =
      seasonal_regression(y, 1, true, std::numeric_limits<double>::infinity(), 0.0);
  double scale = 0.0;
  for (double v : y.values()) scale = std::max(scale, std::abs(v));
  for (int s = 0; s < 4; ++s)
    for (double r : fit.residuals[static_cast<std::size_t>(s)])
      CHECK(std::abs(r) <= 1e-9 * std::max(1.0, scale));
}

TEST_CASE("seasonal fit reconstructs the seasonal difference exactly") {
  const auto y = seasonal_random_walk(40, 91);
  const int k = 4;
  const auto fit = seasonal_regression(y, k, true, kVifThreshold, kLagTThreshold);
  for (int s = 0; s < 4; ++s) {
    const auto& times = fit.residual_times[static_cast<std::size_t>(s)];
    const auto& resid = fit.residuals[static_cast<std::size_t>(s)];
    REQUIRE(times.size() == resid.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      const long t = times[i];
      const double a = y.at(t - 1), b = y.at(t - 2), c = y.at(t - 3), d = y.at(t - 4);
      double fitted = fit.pi[0][static_cast<std::size_t>(s)] * (a + b + c + d) +
                      fit.pi[1][static_cast<std::size_t>(s)] * (-(a - b + c - d)) +
                      fit.pi[2][static_cast<std::size_t>(s)] * (-(b - d)) +
                      fit.pi[3][static_cast<std::size_t>(s)] * (-(a - c));
      for (int i2 = 1; i2 <= k; ++i2)
        fitted += fit.phi[static_cast<std::size_t>(i2 - 1)][static_cast<std::size_t>(s)] *
                  (y.at(t - i2) - y.at(t - i2 - 4));
      const double dep = y.at(t) - y.at(t - 4);
      CHECK(dep == doctest::Approx(fitted + resid[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("truncate_pi") {
  SeasonalFit fit;
  fit.k = 0;
  for (int j = 0; j < 4; ++j)
    for (int s = 0; s < 4; ++s) fit.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = -0.1;

  SUBCASE("all non-positive is the identity") {
    const auto out = truncate_pi(fit);
    CHECK(out.pi == fit.pi);
    CHECK(out.truncation_events.empty());
  }
  SUBCASE("positive entries clip to zero, pi4 untouched") {
    fit.pi[0][1] = 0.03;   // pi1, season 2
    fit.pi[3][0] = 0.03;   // pi4, season 1
    const auto out = truncate_pi(fit);
    CHECK(out.pi[0][1] == 0.0);
    CHECK(out.pi[3][0] == 0.03);
    REQUIRE(out.truncation_events.size() == 1);
  }
  SUBCASE("truncation never moves away from a non-positive truth") {
    Rng rng = make_stream(97, 0);
    for (int trial = 0; trial < 200; ++trial) {
      const double truth = -uniform01(rng);          // planted pi <= 0
      const double estimate = truth + 0.5 * standard_normal(rng);
      const double truncated = std::min(0.0, estimate);
      CHECK(std::abs(truncated - truth) <= std::abs(estimate - truth) + 1e-15);
    }
  }
}

TEST_CASE("null_pi zeroes exactly the tested coefficients") {
  SeasonalFit fit;
  fit.k = 0;
  for (int j = 0; j < 4; ++j)
    for (int s = 0; s < 4; ++s)
      fit.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = -0.2 - j - 0.1 * s;
  const auto out = null_pi(fit, Hypothesis::from_string("34"));
  for (int s = 0; s < 4; ++s) {
    CHECK(out.pi[2][static_cast<std::size_t>(s)] == 0.0);
    CHECK(out.pi[3][static_cast<std::size_t>(s)] == 0.0);
    CHECK(out.pi[0][static_cast<std::size_t>(s)] == fit.pi[0][static_cast<std::size_t>(s)]);
    CHECK(out.pi[1][static_cast<std::size_t>(s)] == fit.pi[1][static_cast<std::size_t>(s)]);
  }
}

TEST_CASE("per-season coefficients agree across seasons for a homogeneous DGP") {
  const int reps = 200;
  std::array<std::vector<double>, 4> pi1_by_season;
  for (int r = 0; r < reps; ++r) {
    const auto y = stationary_ar1(2000, 0.5, 70000 + static_cast<std::uint64_t>(r));
    const auto fit =
        seasonal_regression(y, 0, false, std::numeric_limits<double>::infinity(), 0.0);
    for (int s = 0; s < 4; ++s)
      pi1_by_season[static_cast<std::size_t>(s)].push_back(fit.pi[0][static_cast<std::size_t>(s)]);
  }
  std::array<double, 4> means{}, ses{};
  for (int s = 0; s < 4; ++s) {
    means[static_cast<std::size_t>(s)] = testutil::mean(pi1_by_season[static_cast<std::size_t>(s)]);
    ses[static_cast<std::size_t>(s)] =
        std::sqrt(testutil::variance(pi1_by_season[static_cast<std::size_t>(s)]) / reps);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const double gap = std::abs(means[static_cast<std::size_t>(a)] - means[static_cast<std::size_t>(b)]);
      const double se = std::sqrt(ses[static_cast<std::size_t>(a)] * ses[static_cast<std::size_t>(a)] +
                                  ses[static_cast<std::size_t>(b)] * ses[static_cast<std::size_t>(b)]);
      CHECK(gap <= 3.0 * se);
    }
}

TEST_CASE("pruning keeps a subset of the lag set") {
  const auto y = seasonal_random_walk(40, 123);
  const auto full = augmented_hegy(y, 4, false);
  const auto pruned = augmented_hegy(y, 4, true);
  CHECK(full.retained_lags == std::vector<int>{1, 2, 3, 4});
  for (int lag : pruned.retained_lags)
    CHECK(std::find(full.retained_lags.begin(), full.retained_lags.end(), lag) !=
          full.retained_lags.end());
  CHECK(pruned.retained_lags.size() <= full.retained_lags.size());
}

TEST_CASE("off-diagonal cross products shrink with the sample") {
  auto max_offdiag = [](const QuarterlySeries& y) {
    const auto r = hegy_transform(y);
    // regressor columns Y_{j,t-1} over the unaugmented window t = 5..4T
    const long rows = y.length() - 4;
    std::array<const QuarterlySeries*, 4> cols{&r.y1, &r.y2, &r.y3, &r.y4};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        double dot = 0.0;
        for (long row = 1; row <= rows; ++row) dot += cols[static_cast<std::size_t>(i)]->at(row) *
                                                      cols[static_cast<std::size_t>(j)]->at(row);
        const double norm = static_cast<double>(y.length()) * static_cast<double>(y.length());
        worst = std::max(worst, std::abs(dot / norm));
      }
    return worst;
  };
  const int reps = 50;
  std::vector<double> small, large;
  for (int r = 0; r < reps; ++r) {
    small.push_back(max_offdiag(seasonal_random_walk(250, 3000 + static_cast<std::uint64_t>(r))));
    large.push_back(max_offdiag(seasonal_random_walk(2000, 4000 + static_cast<std::uint64_t>(r))));
  }
  std::sort(small.begin(), small.end());
  std::sort(large.begin(), large.end());
  CHECK(large[reps / 2] < 0.75 * small[reps / 2]);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(augmented_hegy(QuarterlySeries(std::vector<double>(22, 1.0), 1), 0, false),
                  LengthNotMultipleOfFour);
  CHECK_THROWS_AS(augmented_hegy(seasonal_random_walk(5, 1), 0, false), SeriesTooShort);
  CHECK_THROWS_AS(seasonal_regression(seasonal_random_walk(30, 1), 2, false, 10.0, 0.0),
                  ConfigurationError);  // unaugmented requires k = 0
}
