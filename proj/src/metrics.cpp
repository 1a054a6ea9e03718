#include "dynsched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dynsched {

namespace {

// percentage points of t_{0.975, df}; beyond the table the normal quantile
const double kT975[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                        2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                        2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                        2.060,  2.056, 2.052, 2.048, 2.045, 2.042};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit least_squares(std::span<const double> y) {
    const auto n = static_cast<double>(y.size());
    const double x_mean = (n - 1.0) / 2.0;
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        sxy += dx * (y[i] - y_mean);
        sxx += dx * dx;
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = y_mean - fit.slope * x_mean;
    return fit;
}

}  // namespace

double t_quantile_975(int df) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be positive");
    if (df <= 30) return kT975[df - 1];
    if (df <= 40) return 2.021;
    if (df <= 60) return 2.000;
    if (df <= 120) return 1.980;
    return 1.960;
}

double chi_square_quantile_99(int df) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be positive");
    const double z99 = 2.3263478740408408;
    const double d = static_cast<double>(df);
    const double c = 2.0 / (9.0 * d);
    const double base = 1.0 - c + z99 * std::sqrt(c);
    return d * base * base * base;
}

SlopeEstimate slope_with_batch_ci(std::span<const double> series, double burn_in_fraction,
                                  int batches) {
    if (!(burn_in_fraction >= 0.0) || burn_in_fraction >= 1.0)
        throw std::invalid_argument("burn-in fraction must lie in [0,1)");
    if (batches < 3) throw std::invalid_argument("need at least 3 batches");
    const auto skip = static_cast<std::size_t>(burn_in_fraction *
                                               static_cast<double>(series.size()));
    const std::span<const double> tail = series.subspan(skip);
    if (tail.size() < 1000)
        throw std::invalid_argument("need at least 1000 points after burn-in, have " +
                                    std::to_string(tail.size()));

    SlopeEstimate est;
    est.samples = static_cast<std::int64_t>(tail.size());
    est.batches = batches;
    est.slope = least_squares(tail).slope;

    // regression through the batch means; residual spread around that line
    // gives the slope's standard error with df = batches - 2
    const std::size_t per = tail.size() / static_cast<std::size_t>(batches);
    std::vector<double> mean(static_cast<std::size_t>(batches), 0.0);
    std::vector<double> center(static_cast<std::size_t>(batches), 0.0);
    for (std::size_t b = 0; b < mean.size(); ++b) {
        const std::size_t from = b * per;
        const std::size_t to = b + 1 == mean.size() ? tail.size() : from + per;
        double s = 0.0;
        for (std::size_t i = from; i < to; ++i) s += tail[i];
        mean[b] = s / static_cast<double>(to - from);
        center[b] = (static_cast<double>(from) + static_cast<double>(to) - 1.0) / 2.0;
    }
    double cx = 0.0, cy = 0.0;
    for (std::size_t b = 0; b < mean.size(); ++b) {
        cx += center[b];
        cy += mean[b];
    }
    cx /= static_cast<double>(batches);
    cy /= static_cast<double>(batches);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t b = 0; b < mean.size(); ++b) {
        sxx += (center[b] - cx) * (center[b] - cx);
        sxy += (center[b] - cx) * (mean[b] - cy);
    }
    const double batch_slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double ss_res = 0.0;
    for (std::size_t b = 0; b < mean.size(); ++b) {
        const double fit = cy + batch_slope * (center[b] - cx);
        ss_res += (mean[b] - fit) * (mean[b] - fit);
    }
    const double var_slope = sxx > 0.0 ? ss_res / static_cast<double>(batches - 2) / sxx : 0.0;
    est.ci_half_width = t_quantile_975(batches - 2) * std::sqrt(std::max(var_slope, 0.0));
    return est;
}

SlopeEstimate stability_estimate(const MetricsLog& log, double burn_in_fraction) {
    std::vector<double> backlog;
    backlog.reserve(log.per_frame.size());
    for (const auto& f : log.per_frame) backlog.push_back(static_cast<double>(f.backlog));
    return slope_with_batch_ci(backlog, burn_in_fraction);
}

LatencySummary latency_summary(const MetricsLog& log) {
    LatencySummary summary;
    summary.T = log.T;
    for (const auto& [d, acc] : log.latency_by_d) {
        if (acc.count <= 0) continue;
        LatencyGroup group;
        group.d = d;
        group.count = acc.count;
        const auto n = static_cast<double>(acc.count);
        group.mean = acc.sum / n;
        if (acc.count > 1) {
            const double var =
                std::max(0.0, (acc.sum_sq - acc.sum * acc.sum / n) / (n - 1.0));
            group.ci_half_width = 1.96 * std::sqrt(var / n);
        }
        summary.groups.push_back(group);
    }
    if (summary.groups.size() < 2)
        throw std::invalid_argument("latency fit needs deliveries on at least two path lengths");
    // least squares through the origin for mean latency = a * d * T
    double num = 0.0, den = 0.0;
    for (const auto& g : summary.groups) {
        const double x = static_cast<double>(g.d) * static_cast<double>(log.T);
        num += x * g.mean * static_cast<double>(g.count);
        den += x * x * static_cast<double>(g.count);
    }
    summary.fitted_a = den > 0.0 ? num / den : 0.0;
    return summary;
}

TailComparison potential_tail(std::span<const MetricsLog* const> logs,
                              std::span<const std::int64_t> ks) {
    if (logs.empty()) throw std::invalid_argument("no logs to pool");
    const int m = logs.front()->m;
    const double j_budget = logs.front()->J;
    std::int64_t frames = 0;
    for (const MetricsLog* log : logs) {
        if (log->m != m || log->J != j_budget)
            throw std::invalid_argument("pooled logs must share m and J");
        frames += static_cast<std::int64_t>(log->per_frame.size());
    }
    if (frames < 100000)
        throw std::invalid_argument("tail comparison needs at least 1e5 pooled frames, have " +
                                    std::to_string(frames));
    TailComparison cmp;
    cmp.frames = frames;
    const double base = 1.0 - 1.0 / (static_cast<double>(m) * static_cast<double>(m) * j_budget);
    for (std::int64_t k : ks) {
        std::int64_t hits = 0;
        for (const MetricsLog* log : logs)
            for (const auto& f : log->per_frame)
                if (f.potential >= k) ++hits;
        TailRow row;
        row.k = k;
        row.empirical = static_cast<double>(hits) / static_cast<double>(frames);
        row.bound = std::pow(base, static_cast<double>(k));
        row.se = std::sqrt(std::max(row.empirical * (1.0 - row.empirical), 1e-12) /
                           static_cast<double>(frames));
        row.flagged = row.empirical > row.bound + 3.0 * row.se;
        cmp.rows.push_back(row);
    }
    return cmp;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS needs nonempty samples");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const auto na = static_cast<double>(sa.size());
    const auto nb = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult result;
    result.statistic = d;
    const double c01 = 1.628;  // c(alpha) at alpha = 0.01
    result.critical = c01 * std::sqrt((na + nb) / (na * nb));
    result.reject = result.statistic > result.critical;
    return result;
}

}  // namespace dynsched
