#pragma once

// Estimators over simulation logs: backlog drift with batch-means confidence
// intervals, latency scaling against path length, and potential tail bounds.

#include <cstdint>
#include <span>
#include <vector>

#include "dynsched/protocol.hpp"

namespace dynsched {

struct SlopeEstimate {
    double slope = 0.0;          // least-squares, full post-burn-in series
    double ci_half_width = 0.0;  // 95%, from batch-mean regression
    int batches = 0;
    std::int64_t samples = 0;

    double lo() const { return slope - ci_half_width; }
    double hi() const { return slope + ci_half_width; }
    bool contains_zero() const { return lo() <= 0.0 && 0.0 <= hi(); }
};

// Core estimator on a plain series; throws when fewer than 1000 points remain
// after burn-in. batches defaults to 20.
SlopeEstimate slope_with_batch_ci(std::span<const double> series, double burn_in_fraction = 0.2,
                                  int batches = 20);

// Backlog drift in packets per frame.
SlopeEstimate stability_estimate(const MetricsLog& log, double burn_in_fraction = 0.2);

struct LatencyGroup {
    int d = 0;
    std::int64_t count = 0;
    double mean = 0.0;
    double ci_half_width = 0.0;  // 95% normal approximation
};

struct LatencySummary {
    std::vector<LatencyGroup> groups;  // ascending d
    double fitted_a = 0.0;             // least-squares scale in latency ~ a * d * T
    std::int64_t T = 0;
};

// Uses the log's aggregated per-d accumulators; requires deliveries on at
// least two distinct path lengths.
LatencySummary latency_summary(const MetricsLog& log);

struct TailRow {
    std::int64_t k = 0;
    double empirical = 0.0;
    double bound = 0.0;  // (1 - 1/(m^2 J))^k
    double se = 0.0;
    bool flagged = false;  // empirical above bound + 3 se
};

struct TailComparison {
    std::vector<TailRow> rows;
    std::int64_t frames = 0;
};

// Pools per-frame potentials across logs (all logs must share m and J) and
// compares the empirical exceedance P(potential >= k) against the geometric
// bound. Requires at least 1e5 pooled frames.
TailComparison potential_tail(std::span<const MetricsLog* const> logs,
                              std::span<const std::int64_t> ks);

// Student-t 97.5% quantile, exact for small df, normal beyond the table.
double t_quantile_975(int df);

// Chi-square 99% quantile via the Wilson-Hilferty approximation.
double chi_square_quantile_99(int df);

struct KsResult {
    double statistic = 0.0;
    double critical = 0.0;  // alpha = 0.01
    bool reject = false;
};

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace dynsched
