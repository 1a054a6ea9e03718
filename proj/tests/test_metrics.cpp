// Estimators: batch-means slope intervals, latency fits, potential tails and
// the small statistical utilities they rest on.

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "dynsched/metrics.hpp"
#include "dynsched/rng.hpp"

using namespace dynsched;

namespace {

MetricsLog log_with_backlog(const std::vector<double>& backlog) {
    MetricsLog log;
    for (std::size_t i = 0; i < backlog.size(); ++i) {
        FrameReport rep;
        rep.frame = static_cast<std::int64_t>(i);
        rep.backlog = static_cast<std::int64_t>(backlog[i]);
        log.per_frame.push_back(rep);
    }
    return log;
}

}  // namespace

TEST_CASE("a noiseless line is recovered exactly") {
    std::vector<double> series;
    for (int i = 0; i < 2000; ++i) series.push_back(3.0 + 0.5 * i);
    const SlopeEstimate est = slope_with_batch_ci(series, 0.0, 20);
    CHECK(est.slope == doctest::Approx(0.5).epsilon(1e-12));
    // batch means of a line sit exactly on it, so the residual interval collapses
    CHECK(est.ci_half_width == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(!est.contains_zero());
    CHECK(est.lo() == doctest::Approx(est.slope - est.ci_half_width));
    CHECK(est.hi() == doctest::Approx(est.slope + est.ci_half_width));
    CHECK(est.samples == 2000);
    CHECK(est.batches == 20);
}

TEST_CASE("burn-in discards the leading fraction") {
    std::vector<double> series(2000, 0.0);
    for (int i = 0; i < 400; ++i) series[static_cast<std::size_t>(i)] = 1e9;
    for (int i = 400; i < 2000; ++i) series[static_cast<std::size_t>(i)] = 7.0 - 0.25 * i;
    const SlopeEstimate est = slope_with_batch_ci(series, 0.2, 10);
    CHECK(est.samples == 1600);
    CHECK(est.slope == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("zero-drift noise yields an interval containing zero") {
    RngStream rng(404, "noise");
    std::vector<double> series;
    for (int i = 0; i < 5000; ++i)
        series.push_back(10.0 + (rng.bernoulli(0.5) ? 1.0 : -1.0));
    const SlopeEstimate est = slope_with_batch_ci(series);
    CHECK(std::abs(est.slope) < 0.001);
    CHECK(est.ci_half_width > 0.0);
    CHECK(est.contains_zero());
}

TEST_CASE("slope estimator rejects bad arguments") {
    const std::vector<double> series(1200, 1.0);
    CHECK_THROWS_WITH_AS(slope_with_batch_ci(series, 0.2, 20),
                         doctest::Contains("have 960"), std::invalid_argument);
    const std::vector<double> tiny(999, 1.0);
    CHECK_THROWS_AS(slope_with_batch_ci(tiny, 0.0, 20), std::invalid_argument);
    CHECK_THROWS_AS(slope_with_batch_ci(series, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(slope_with_batch_ci(series, 1.0, 20), std::invalid_argument);
    CHECK_THROWS_AS(slope_with_batch_ci(series, -0.1, 20), std::invalid_argument);
    CHECK_NOTHROW(slope_with_batch_ci(series, 0.0, 20));
}

TEST_CASE("stability estimate reads the backlog column") {
    std::vector<double> backlog;
    for (int i = 0; i < 3000; ++i) backlog.push_back(2.0 * i);
    const MetricsLog log = log_with_backlog(backlog);
    const SlopeEstimate est = stability_estimate(log, 0.0);
    CHECK(est.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(est.samples == 3000);
}

TEST_CASE("latency fit recovers an exact proportionality") {
    MetricsLog log;
    log.T = 100;
    const double a = 2.0;
    for (int d = 1; d <= 3; ++d) {
        LatencyAccum acc;
        acc.count = 10 * d;
        const double mean = a * d * 100.0;
        acc.sum = mean * static_cast<double>(acc.count);
        acc.sum_sq = mean * mean * static_cast<double>(acc.count);
        log.latency_by_d[d] = acc;
    }
    log.latency_by_d[9] = LatencyAccum{};  // zero count, must be skipped
    const LatencySummary summary = latency_summary(log);
    CHECK(summary.fitted_a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(summary.T == 100);
    REQUIRE(summary.groups.size() == 3);
    CHECK(summary.groups[0].d == 1);
    CHECK(summary.groups[2].d == 3);
    CHECK(summary.groups[1].mean == doctest::Approx(400.0));
    CHECK(summary.groups[1].count == 20);
    // zero sample variance collapses the group interval
    CHECK(summary.groups[0].ci_half_width == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("latency fit weights groups by delivery count") {
    MetricsLog log;
    log.T = 10;
    LatencyAccum heavy;  // d = 1, mean 30 = 3 * d * T, dominant weight
    heavy.count = 1000;
    heavy.sum = 30.0 * 1000.0;
    heavy.sum_sq = 30.0 * 30.0 * 1000.0;
    LatencyAccum light;  // d = 2, mean 20 = 1 * d * T, single delivery
    light.count = 1;
    light.sum = 20.0;
    light.sum_sq = 400.0;
    log.latency_by_d[1] = heavy;
    log.latency_by_d[2] = light;
    const LatencySummary summary = latency_summary(log);
    // weighted through-origin fit: a = sum(x y n) / sum(x^2 n)
    const double expected = (10.0 * 30.0 * 1000.0 + 20.0 * 20.0 * 1.0) /
                            (100.0 * 1000.0 + 400.0 * 1.0);
    CHECK(summary.fitted_a == doctest::Approx(expected).epsilon(1e-12));
    CHECK(summary.fitted_a > 2.9);
}

TEST_CASE("latency fit needs two distinct path lengths") {
    MetricsLog log;
    log.T = 10;
    LatencyAccum acc;
    acc.count = 5;
    acc.sum = 50.0;
    acc.sum_sq = 520.0;
    log.latency_by_d[2] = acc;
    CHECK_THROWS_WITH_AS(latency_summary(log), doctest::Contains("two"),
                         std::invalid_argument);
}

TEST_CASE("potential tail compares pooled exceedance against the geometric bound") {
    MetricsLog a, b;
    for (MetricsLog* log : {&a, &b}) {
        log->m = 2;
        log->J = 5.0;
        log->per_frame.resize(50000);
    }
    // 1000 frames sit at potential 3, everything else at 0
    for (int i = 0; i < 1000; ++i) a.per_frame[static_cast<std::size_t>(i)].potential = 3;
    const MetricsLog* logs[] = {&a, &b};
    const std::int64_t ks[] = {1, 2, 4};
    const TailComparison cmp = potential_tail(logs, ks);
    CHECK(cmp.frames == 100000);
    REQUIRE(cmp.rows.size() == 3);
    CHECK(cmp.rows[0].k == 1);
    CHECK(cmp.rows[0].empirical == doctest::Approx(0.01));
    CHECK(cmp.rows[0].bound == doctest::Approx(0.95));
    CHECK(cmp.rows[1].empirical == doctest::Approx(0.01));
    CHECK(cmp.rows[1].bound == doctest::Approx(0.9025));
    CHECK(cmp.rows[2].empirical == doctest::Approx(0.0).scale(1.0));
    CHECK(!cmp.rows[0].flagged);
    CHECK(!cmp.rows[1].flagged);
    CHECK(!cmp.rows[2].flagged);
    const double se = std::sqrt(0.01 * 0.99 / 100000.0);
    CHECK(cmp.rows[0].se == doctest::Approx(se).epsilon(1e-9));
}

TEST_CASE("potential tail flags an excess over the bound") {
    MetricsLog log;
    log.m = 1;
    log.J = 1.0;  // bound (1 - 1/(m^2 J))^k collapses to zero
    log.per_frame.resize(100000);
    for (int i = 0; i < 1000; ++i) log.per_frame[static_cast<std::size_t>(i)].potential = 1;
    const MetricsLog* logs[] = {&log};
    const std::int64_t ks[] = {1};
    const TailComparison cmp = potential_tail(logs, ks);
    CHECK(cmp.rows[0].bound == doctest::Approx(0.0).scale(1.0));
    CHECK(cmp.rows[0].empirical == doctest::Approx(0.01));
    CHECK(cmp.rows[0].flagged);
}

TEST_CASE("potential tail enforces pooling preconditions") {
    MetricsLog a, b;
    a.m = 2;
    a.J = 5.0;
    a.per_frame.resize(60000);
    b = a;
    b.m = 3;
    const MetricsLog* mixed[] = {&a, &b};
    const std::int64_t ks[] = {1};
    CHECK_THROWS_WITH_AS(potential_tail(mixed, ks), doctest::Contains("share"),
                         std::invalid_argument);
    const MetricsLog* lone[] = {&a};
    CHECK_THROWS_WITH_AS(potential_tail(lone, ks), doctest::Contains("have 60000"),
                         std::invalid_argument);
    CHECK_THROWS_AS(potential_tail(std::span<const MetricsLog* const>{}, ks),
                    std::invalid_argument);
}

TEST_CASE("t quantiles follow the standard table") {
    CHECK(t_quantile_975(1) == doctest::Approx(12.706));
    CHECK(t_quantile_975(9) == doctest::Approx(2.262));
    CHECK(t_quantile_975(19) == doctest::Approx(2.093));
    CHECK(t_quantile_975(30) == doctest::Approx(2.042));
    CHECK(t_quantile_975(40) == doctest::Approx(2.021));
    CHECK(t_quantile_975(60) == doctest::Approx(2.0));
    CHECK(t_quantile_975(120) == doctest::Approx(1.98));
    CHECK(t_quantile_975(5000) == doctest::Approx(1.96));
    CHECK_THROWS_AS(t_quantile_975(0), std::invalid_argument);
}

TEST_CASE("chi-square quantile approximation tracks reference values") {
    CHECK(chi_square_quantile_99(10) == doctest::Approx(23.209).epsilon(0.005));
    CHECK(chi_square_quantile_99(55) == doctest::Approx(82.292).epsilon(0.005));
    CHECK(chi_square_quantile_99(100) == doctest::Approx(135.807).epsilon(0.005));
    CHECK_THROWS_AS(chi_square_quantile_99(0), std::invalid_argument);
}

TEST_CASE("KS test separates shifted samples and accepts identical ones") {
    RngStream rng(7, "ks");
    std::vector<double> a, b, shifted;
    for (int i = 0; i < 2000; ++i) {
        const double u = static_cast<double>(rng.below(1 << 20)) / (1 << 20);
        a.push_back(u);
        shifted.push_back(u + 0.5);
    }
    b = a;
    const KsResult same = ks_two_sample(a, b);
    CHECK(same.statistic == doctest::Approx(0.0).scale(1.0));
    CHECK(!same.reject);
    CHECK(same.critical == doctest::Approx(1.628 * std::sqrt(2.0 / 2000.0)).epsilon(1e-9));
    const KsResult apart = ks_two_sample(a, shifted);
    CHECK(apart.statistic > 0.4);
    CHECK(apart.reject);
    CHECK_THROWS_AS(ks_two_sample(std::span<const double>{}, a), std::invalid_argument);
}

TEST_CASE("uniform draws pass a chi-square uniformity check") {
    // the admission-delay wrapper leans on below(n) being uniform
    RngStream rng(2024, "uniformity");
    const int bins = 56;
    const int draws = 100000;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (int i = 0; i < draws; ++i)
        ++counts[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(bins)))];
    const double expected = static_cast<double>(draws) / bins;
    double stat = 0.0;
    for (const int c : counts)
        stat += (c - expected) * (c - expected) / expected;
    CHECK(stat < chi_square_quantile_99(bins - 1));
}
