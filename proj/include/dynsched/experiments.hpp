#pragma once

// Canned end-to-end scenarios with their pass criteria. The CLI's experiment
// subcommand and the acceptance suite both run these.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dynsched/metrics.hpp"
#include "dynsched/protocol.hpp"

namespace dynsched {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double threshold = 0.0;
    std::int64_t samples = 0;
    std::string detail;
};

struct ExperimentReport {
    std::string scenario;
    std::vector<std::uint64_t> seeds;
    std::vector<CriterionResult> criteria;

    bool all_pass() const;
};

struct MacStabilityConfig {
    int m = 4;
    double phi = 1.0;
    double delta = 0.5;
    double epsilon = 0.5;
    double rate_fraction = 0.5;       // injection rate as a fraction of lambda
    std::int64_t override_t = 30000;  // theory T is out of reach at this runtime budget
    std::int64_t frames = 50000;
    int seed_count = 10;
    double overload_rate = 1.2;       // packets per slot, above channel capacity
    std::int64_t overload_t = 600;
    std::int64_t overload_frames = 1250;
    std::vector<std::int64_t> tail_ks = {1, 2, 4, 8, 16};
    int jobs = 1;
};

// Backlog drift at half the design rate plus the overload twin, and the
// potential tail comparison pooled over the stable runs.
ExperimentReport run_mac_stability_experiment(const MacStabilityConfig& cfg,
                                              std::uint64_t base_seed);

struct CleanupRateConfig {
    int m = 8;
    double phi = 1.0;
    double delta = 0.5;
    double epsilon = 0.5;
    std::int64_t override_t = 2000;
    std::int64_t frames = 10000;
};

// One permanently re-seeded failed packet; measures the per-frame clean-up
// success rate against the 1/(2 e m) guarantee.
ExperimentReport run_cleanup_rate_experiment(const CleanupRateConfig& cfg,
                                             std::uint64_t base_seed);

struct LatencyScalingConfig {
    int chain_links = 4;  // line network, paths of every length 1..chain_links
    double epsilon = 0.5;
    double rate = 0.1;  // packets per slot, far under lambda = 0.5
    std::int64_t frames = 5000;
    double max_fitted_a = 4.0;
};

// Routing chain under the single-hop descriptor at the true theory T; fits
// latency = a * d * T over path lengths d.
ExperimentReport run_latency_scaling_experiment(const LatencyScalingConfig& cfg,
                                                std::uint64_t base_seed);

struct AdversarialConfig {
    int chain_links = 4;
    double epsilon = 0.5;    // wrapper epsilon; frames are sized with epsilon/2
    std::int64_t window = 10;
    double rate_fraction = 0.5;  // trace lambda as a fraction of lambda'
    std::int64_t frames = 1250;  // enough post-burn-in frames for a slope CI
    std::int64_t cohort_from = 50;  // frames whose packets enter the latency cohort
    std::int64_t cohort_to = 300;
    double latency_tolerance = 0.2;
};

// Saturating windowed trace through the delay wrapper: trace must validate,
// backlog must stay flat, and the wrapper's extra latency must match
// (delta_max - 1)/2 frames against the unwrapped twin.
ExperimentReport run_adversarial_experiment(const AdversarialConfig& cfg,
                                            std::uint64_t base_seed);

struct LocalClockConfig {
    int m = 64;
    double global_rate = 0.4;
    std::int64_t slots = 200000;
    int seed_count = 5;
    std::vector<int> stable_ms = {4, 16, 64};
};

// One long link blocked by all short links. The globally clocked even/odd
// protocol stays stable where the local-clock immediate-transmission protocol
// provably cannot keep up at rate ln(m)/m.
ExperimentReport run_local_clock_experiment(const LocalClockConfig& cfg,
                                            std::uint64_t base_seed);

using ExperimentFn = std::function<ExperimentReport(std::uint64_t base_seed, int jobs)>;

const std::map<std::string, ExperimentFn>& experiment_registry();

std::string format_report(const ExperimentReport& report);

}  // namespace dynsched
