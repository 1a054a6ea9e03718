#include "dynsched/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynsched/builders.hpp"
#include "dynsched/injection.hpp"
#include "dynsched/metrics.hpp"
#include "dynsched/oracles.hpp"
#include "dynsched/schedulers.hpp"

namespace dynsched {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// one slope estimate from replicate runs: the mean of the per-run slopes with
// a t-based confidence interval over the replicates
SlopeEstimate pool_slopes(const std::vector<SlopeEstimate>& reps) {
    if (reps.size() < 2) throw std::invalid_argument("pooling needs at least two replicates");
    SlopeEstimate out{};
    double mean = 0.0;
    for (const auto& r : reps) {
        mean += r.slope;
        out.samples += r.samples;
    }
    const double n = static_cast<double>(reps.size());
    mean /= n;
    double var = 0.0;
    for (const auto& r : reps) var += (r.slope - mean) * (r.slope - mean);
    var /= n - 1.0;
    out.slope = mean;
    out.ci_half_width = t_quantile_975(static_cast<int>(reps.size()) - 1) * std::sqrt(var / n);
    out.batches = static_cast<int>(reps.size());
    return out;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& work) {
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex mu;
    std::exception_ptr first;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                work(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(mu);
                if (!first) first = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

// m sender/receiver pairs sharing one channel
NetworkInstance make_mac_network(int m) {
    std::vector<std::string> nodes;
    std::vector<Link> links;
    nodes.reserve(static_cast<std::size_t>(2 * m));
    links.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        nodes.push_back("s" + std::to_string(i));
        nodes.push_back("r" + std::to_string(i));
        links.push_back(Link{2 * i, 2 * i + 1});
    }
    return NetworkInstance(std::move(nodes), std::move(links), 1);
}

// a line of `count` links; paths run along prefixes
NetworkInstance make_chain_network(int count) {
    std::vector<std::string> nodes;
    std::vector<Link> links;
    for (int v = 0; v <= count; ++v) nodes.push_back("v" + std::to_string(v));
    for (int e = 0; e < count; ++e) links.push_back(Link{e, e + 1});
    return NetworkInstance(std::move(nodes), std::move(links), count);
}

// one single-hop generator per link, each injecting with probability q per slot
StochasticInjectionSpec make_mac_spec(int m, double q) {
    StochasticInjectionSpec spec;
    spec.generators.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        auto path = std::make_shared<RoutePath>(RoutePath{{i}});
        spec.generators.push_back(PacketGenerator{{WeightedPath{std::move(path), q}}});
    }
    return spec;
}

// one generator per prefix length d = 1..count, each at probability q per slot
StochasticInjectionSpec make_chain_spec(int count, double q) {
    StochasticInjectionSpec spec;
    spec.generators.reserve(static_cast<std::size_t>(count));
    for (int d = 1; d <= count; ++d) {
        RoutePath path;
        for (int h = 0; h < d; ++h) path.hops.push_back(h);
        spec.generators.push_back(
            PacketGenerator{{WeightedPath{std::make_shared<RoutePath>(std::move(path)), q}}});
    }
    return spec;
}

std::vector<RoutePath> chain_prefix_paths(int count) {
    std::vector<RoutePath> paths;
    for (int d = 1; d <= count; ++d) {
        RoutePath path;
        for (int h = 0; h < d; ++h) path.hops.push_back(h);
        paths.push_back(std::move(path));
    }
    return paths;
}

}  // namespace

bool ExperimentReport::all_pass() const {
    for (const auto& c : criteria)
        if (!c.pass) return false;
    return true;
}

ExperimentReport run_mac_stability_experiment(const MacStabilityConfig& cfg,
                                              std::uint64_t base_seed) {
    ExperimentReport report;
    report.scenario = "mac-stability";
    const NetworkInstance net = make_mac_network(cfg.m);
    const InterferenceMatrix w = build_w_mac(cfg.m);
    const MacOracle oracle;
    const SchedulerDescriptor desc = make_mac_symmetric_descriptor(cfg.phi, cfg.delta);
    const FrameConfig config =
        compute_frame_params_override(cfg.epsilon, desc, cfg.m, cfg.override_t);

    const double q = cfg.rate_fraction * config.lambda / static_cast<double>(cfg.m);
    const StochasticInjectionSpec spec = make_mac_spec(cfg.m, q);

    std::vector<MetricsLog> logs(static_cast<std::size_t>(cfg.seed_count));
    parallel_for(cfg.jobs, cfg.seed_count, [&](int i) {
        SimulationOptions opt;
        opt.horizon_frames = cfg.frames;
        opt.seed = base_seed + static_cast<std::uint64_t>(i);
        opt.record_per_packet = false;
        logs[static_cast<std::size_t>(i)] =
            run_simulation(net, w, config, InjectionSource::stochastic(spec), oracle, opt);
    });
    for (int i = 0; i < cfg.seed_count; ++i)
        report.seeds.push_back(base_seed + static_cast<std::uint64_t>(i));

    {
        CriterionResult c;
        c.name = "stable-backlog-drift";
        c.threshold = 0.01;
        std::vector<SlopeEstimate> reps;
        double worst = 0.0;
        for (const auto& log : logs) {
            reps.push_back(stability_estimate(log));
            worst = std::max(worst, std::abs(reps.back().slope));
        }
        const SlopeEstimate pooled = pool_slopes(reps);
        c.estimate = pooled.slope;
        c.lo = pooled.lo();
        c.hi = pooled.hi();
        c.samples = pooled.samples;
        c.pass = std::abs(pooled.slope) < 0.01 && pooled.contains_zero() && worst < 0.01;
        c.detail = std::to_string(cfg.seed_count) + " seeds x " + std::to_string(cfg.frames) +
                   " frames at " + num(cfg.rate_fraction) +
                   "*lambda; pooled slope, worst per-seed |slope| " + num(worst);
        report.criteria.push_back(std::move(c));
    }

    {
        const FrameConfig over =
            compute_frame_params_override(cfg.epsilon, desc, cfg.m, cfg.overload_t);
        const StochasticInjectionSpec spec_over =
            make_mac_spec(cfg.m, cfg.overload_rate / static_cast<double>(cfg.m));
        CriterionResult c;
        c.name = "overload-backlog-drift";
        c.threshold = 0.1;
        c.pass = true;
        c.estimate = std::numeric_limits<double>::infinity();
        c.lo = std::numeric_limits<double>::infinity();
        c.hi = -std::numeric_limits<double>::infinity();
        const int overload_seeds = 2;
        for (int i = 0; i < overload_seeds; ++i) {
            SimulationOptions opt;
            opt.horizon_frames = cfg.overload_frames;
            opt.seed = base_seed + 1000 + static_cast<std::uint64_t>(i);
            opt.record_per_packet = false;
            const MetricsLog log = run_simulation(
                net, w, over, InjectionSource::stochastic(spec_over), oracle, opt);
            const SlopeEstimate est = stability_estimate(log);
            c.estimate = std::min(c.estimate, est.slope);
            c.lo = std::min(c.lo, est.lo());
            c.hi = std::max(c.hi, est.hi());
            c.samples += est.samples;
            if (!(est.slope > 0.1) || !(est.lo() > 0.0)) c.pass = false;
        }
        c.detail = "rate " + num(cfg.overload_rate) + " packets/slot over " +
                   std::to_string(cfg.overload_frames) + " frames; smallest slope shown";
        report.criteria.push_back(std::move(c));
    }

    {
        std::vector<const MetricsLog*> ptrs;
        ptrs.reserve(logs.size());
        for (const auto& log : logs) ptrs.push_back(&log);
        const TailComparison tail = potential_tail(ptrs, cfg.tail_ks);
        CriterionResult c;
        c.name = "potential-tail-bound";
        c.threshold = 0.0;
        c.pass = true;
        c.samples = tail.frames;
        c.estimate = -std::numeric_limits<double>::infinity();
        for (const auto& row : tail.rows) {
            c.estimate = std::max(c.estimate, row.empirical - row.bound);
            if (row.flagged) c.pass = false;
            if (!c.detail.empty()) c.detail += "; ";
            c.detail += "k=" + std::to_string(row.k) + " emp=" + num(row.empirical) +
                        " bound=" + num(row.bound);
        }
        report.criteria.push_back(std::move(c));
    }
    return report;
}

ExperimentReport run_cleanup_rate_experiment(const CleanupRateConfig& cfg,
                                             std::uint64_t base_seed) {
    ExperimentReport report;
    report.scenario = "cleanup-rate";
    report.seeds = {base_seed};
    const SchedulerDescriptor desc = make_mac_symmetric_descriptor(cfg.phi, cfg.delta);
    const FrameConfig config =
        compute_frame_params_override(cfg.epsilon, desc, cfg.m, cfg.override_t);
    const MacOracle oracle;
    RngStream scheduler_rng(base_seed, "scheduler");
    RngStream cleanup_rng(base_seed, "cleanup");

    ProtocolState state(cfg.m);
    const auto path = std::make_shared<RoutePath>(RoutePath{{0}});
    std::int64_t hits = 0;
    for (std::int64_t k = 0; k < cfg.frames; ++k) {
        for (auto& buffer : state.failed_buffers) buffer.clear();
        Packet p;
        p.id = static_cast<std::uint64_t>(k);
        p.path = path;
        p.state = PacketState::failed;
        state.failed_buffers[0].push_back(std::move(p));
        state.potential = 1;
        const FrameReport rep =
            run_frame(state, config, oracle, scheduler_rng, cleanup_rng);
        if (rep.cleanup_successes > 0) ++hits;
    }

    const double p_hat = static_cast<double>(hits) / static_cast<double>(cfg.frames);
    const double se = std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) /
                                static_cast<double>(cfg.frames));
    const double bound = 1.0 / (2.0 * std::exp(1.0) * static_cast<double>(cfg.m));
    CriterionResult c;
    c.name = "cleanup-success-rate";
    c.estimate = p_hat;
    c.lo = p_hat - 3.0 * se;
    c.hi = p_hat + 3.0 * se;
    c.threshold = bound;
    c.samples = cfg.frames;
    c.pass = p_hat >= bound - 3.0 * se;
    c.detail = "one failed packet re-seeded every frame; bound 1/(2 e m)";
    report.criteria.push_back(std::move(c));
    return report;
}

ExperimentReport run_latency_scaling_experiment(const LatencyScalingConfig& cfg,
                                                std::uint64_t base_seed) {
    ExperimentReport report;
    report.scenario = "latency-scaling";
    const int L = cfg.chain_links;
    const NetworkInstance net = make_chain_network(L);
    const InterferenceMatrix w = build_w_identity(L);
    const EdgeCapacityOracle oracle;
    const SchedulerDescriptor desc = make_single_hop_routing_descriptor();
    const FrameConfig config = compute_frame_params(cfg.epsilon, desc, net.size());
    const StochasticInjectionSpec spec =
        make_chain_spec(L, cfg.rate / static_cast<double>(L));

    const int seed_count = 3;
    CriterionResult c;
    c.name = "latency-scale-fit";
    c.threshold = cfg.max_fitted_a;
    c.pass = true;
    c.lo = std::numeric_limits<double>::infinity();
    c.hi = -std::numeric_limits<double>::infinity();
    std::string means;
    for (int i = 0; i < seed_count; ++i) {
        SimulationOptions opt;
        opt.horizon_frames = cfg.frames;
        opt.seed = base_seed + static_cast<std::uint64_t>(i);
        opt.record_per_packet = false;
        const MetricsLog log =
            run_simulation(net, w, config, InjectionSource::stochastic(spec), oracle, opt);
        report.seeds.push_back(opt.seed);
        const LatencySummary summary = latency_summary(log);
        c.lo = std::min(c.lo, summary.fitted_a);
        c.hi = std::max(c.hi, summary.fitted_a);
        c.estimate = std::max(c.estimate, summary.fitted_a);
        for (const auto& group : summary.groups) c.samples += group.count;
        if (!(summary.fitted_a > 0.0) || !(summary.fitted_a <= cfg.max_fitted_a))
            c.pass = false;
        if (means.empty())
            for (const auto& group : summary.groups)
                means += "d=" + std::to_string(group.d) + " mean=" +
                         num(group.mean / static_cast<double>(config.T)) + "T; ";
    }
    c.detail = "T=" + std::to_string(config.T) + "; " + means + "largest fit shown";
    report.criteria.push_back(std::move(c));
    return report;
}

ExperimentReport run_adversarial_experiment(const AdversarialConfig& cfg,
                                            std::uint64_t base_seed) {
    ExperimentReport report;
    report.scenario = "adversarial";
    report.seeds = {base_seed};
    const int L = cfg.chain_links;
    const NetworkInstance net = make_chain_network(L);
    const InterferenceMatrix w = build_w_identity(L);
    const EdgeCapacityOracle oracle;
    const SchedulerDescriptor desc = make_single_hop_routing_descriptor();
    DelayWrapperConfig wrapper = make_delay_wrapper(cfg.epsilon, L, cfg.window);
    const FrameConfig config =
        compute_frame_params(wrapper.effective_epsilon, desc, net.size());
    wrapper.lambda_prime = config.lambda;

    const std::vector<RoutePath> candidates = chain_prefix_paths(L);
    RngStream trace_rng(base_seed, "trace");
    const double trace_rate = cfg.rate_fraction * config.lambda;
    const AdversarialTrace trace =
        generate_saturating_trace(w, cfg.window, trace_rate, TracePattern::uniform,
                                  candidates, cfg.frames * config.T, trace_rng);
    const WindowCheck check = validate_window_trace(trace, w);
    {
        CriterionResult c;
        c.name = "trace-window-validation";
        c.estimate = check.ok ? 1.0 : 0.0;
        c.lo = c.estimate;
        c.hi = c.estimate;
        c.threshold = 1.0;
        c.samples = static_cast<std::int64_t>(trace.injections.size());
        c.pass = check.ok && !trace.injections.empty();
        c.detail = "window=" + std::to_string(cfg.window) + " lambda=" + num(trace_rate) +
                   " injections=" + std::to_string(trace.injections.size());
        report.criteria.push_back(std::move(c));
    }

    SimulationOptions opt;
    opt.horizon_frames = cfg.frames;
    opt.seed = base_seed;
    opt.record_per_packet = true;
    const MetricsLog wrapped = run_simulation(
        net, w, config, InjectionSource::adversarial(trace, wrapper), oracle, opt);
    const MetricsLog twin =
        run_simulation(net, w, config, InjectionSource::adversarial(trace), oracle, opt);

    {
        const SlopeEstimate est = stability_estimate(wrapped);
        CriterionResult c;
        c.name = "adversarial-backlog-drift";
        c.estimate = est.slope;
        c.lo = est.lo();
        c.hi = est.hi();
        c.threshold = 0.0;
        c.samples = est.samples;
        c.pass = est.contains_zero();
        c.detail = "95% batch-means CI must contain 0";
        report.criteria.push_back(std::move(c));
    }

    {
        const std::int64_t from = cfg.cohort_from * config.T;
        const std::int64_t to = cfg.cohort_to * config.T;
        std::unordered_map<std::uint64_t, std::int64_t> twin_latency;
        twin_latency.reserve(twin.per_packet.size());
        for (const auto& row : twin.per_packet)
            if (row.injection_slot >= from && row.injection_slot < to)
                twin_latency.emplace(row.id, row.delivery_slot - row.injection_slot);
        double sum = 0.0, sum_sq = 0.0;
        std::int64_t count = 0;
        for (const auto& row : wrapped.per_packet) {
            if (row.injection_slot < from || row.injection_slot >= to) continue;
            const auto it = twin_latency.find(row.id);
            if (it == twin_latency.end()) continue;
            const double diff = static_cast<double>(row.delivery_slot - row.injection_slot -
                                                    it->second) /
                                static_cast<double>(config.T);
            sum += diff;
            sum_sq += diff * diff;
            ++count;
        }
        CriterionResult c;
        c.name = "wrapper-latency-shift";
        c.samples = count;
        const double expected =
            static_cast<double>(wrapper.delta_max - 1) / 2.0;
        c.threshold = expected;
        if (count > 1) {
            const double mean = sum / static_cast<double>(count);
            const double var = std::max(
                0.0, (sum_sq - sum * sum / static_cast<double>(count)) /
                         static_cast<double>(count - 1));
            const double se = std::sqrt(var / static_cast<double>(count));
            c.estimate = mean;
            c.lo = mean - 1.96 * se;
            c.hi = mean + 1.96 * se;
            c.pass = std::abs(mean - expected) <= cfg.latency_tolerance * expected;
        }
        c.detail = "paired latency diff in frames; delta_max=" +
                   std::to_string(wrapper.delta_max) + " expected=" + num(expected) +
                   " tol=" + num(cfg.latency_tolerance * 100.0) + "%";
        report.criteria.push_back(std::move(c));
    }
    return report;
}

namespace {

struct ClockRun {
    SlopeEstimate long_drift;
    std::int64_t silent_slots = 0;
    std::int64_t slots = 0;
};

// One long link blocked by every short link; short links never block each
// other or the long one. global_clock = true alternates short (even) and long
// (odd) slots; otherwise every link transmits the slot its packet arrives.
ClockRun simulate_clock(int m, double rate, std::int64_t slots, std::uint64_t seed,
                        std::string_view tag, bool global_clock) {
    const int shorts = m - 1;
    RngStream arrivals(seed, tag);
    std::vector<std::int64_t> short_q(static_cast<std::size_t>(shorts), 0);
    std::int64_t long_q = 0;
    std::vector<double> series(static_cast<std::size_t>(slots));
    ClockRun out;
    out.slots = slots;
    for (std::int64_t t = 0; t < slots; ++t) {
        for (auto& queue : short_q)
            if (arrivals.bernoulli(rate)) ++queue;
        if (arrivals.bernoulli(rate)) ++long_q;
        int short_tx = 0;
        if (global_clock) {
            if (t % 2 == 0) {
                for (auto& queue : short_q)
                    if (queue > 0) {
                        --queue;
                        ++short_tx;
                    }
            } else if (long_q > 0) {
                --long_q;  // short links hold back on odd slots
            }
        } else {
            for (auto& queue : short_q)
                if (queue > 0) {
                    --queue;
                    ++short_tx;
                }
            if (short_tx == 0 && long_q > 0) --long_q;
        }
        if (short_tx == 0) ++out.silent_slots;
        series[static_cast<std::size_t>(t)] = static_cast<double>(long_q);
    }
    out.long_drift = slope_with_batch_ci(series);
    return out;
}

}  // namespace

ExperimentReport run_local_clock_experiment(const LocalClockConfig& cfg,
                                            std::uint64_t base_seed) {
    ExperimentReport report;
    report.scenario = "local-clock";
    for (int s = 0; s < cfg.seed_count; ++s)
        report.seeds.push_back(base_seed + static_cast<std::uint64_t>(s));

    {
        CriterionResult c;
        c.name = "global-clock-stability";
        c.threshold = 0.01;
        c.pass = true;
        c.lo = std::numeric_limits<double>::infinity();
        c.hi = -std::numeric_limits<double>::infinity();
        std::string drifts;
        for (int m : cfg.stable_ms) {
            const std::string tag = "clock-global-" + std::to_string(m);
            std::vector<SlopeEstimate> reps;
            double worst = 0.0;
            for (int s = 0; s < cfg.seed_count; ++s) {
                const ClockRun run =
                    simulate_clock(m, cfg.global_rate, cfg.slots,
                                   base_seed + static_cast<std::uint64_t>(s), tag, true);
                reps.push_back(run.long_drift);
                worst = std::max(worst, std::abs(run.long_drift.slope));
            }
            const SlopeEstimate pooled = pool_slopes(reps);
            if (std::abs(pooled.slope) > std::abs(c.estimate)) c.estimate = pooled.slope;
            c.lo = std::min(c.lo, pooled.lo());
            c.hi = std::max(c.hi, pooled.hi());
            c.samples += pooled.samples;
            if (!(std::abs(pooled.slope) < 0.01) || !pooled.contains_zero() ||
                !(worst < 0.01))
                c.pass = false;
            drifts += " m=" + std::to_string(m) + ":" + num(pooled.slope);
        }
        c.detail = "even/odd clock, long-link drift at rate " + num(cfg.global_rate) +
                   "; pooled slope per size:" + drifts;
        report.criteria.push_back(std::move(c));
    }

    const double lambda = std::log(static_cast<double>(cfg.m)) / static_cast<double>(cfg.m);
    std::int64_t silent = 0;
    std::int64_t total = 0;
    {
        CriterionResult c;
        c.name = "local-clock-instability";
        c.threshold = 0.0;
        c.pass = true;
        c.estimate = std::numeric_limits<double>::infinity();
        c.lo = std::numeric_limits<double>::infinity();
        c.hi = -std::numeric_limits<double>::infinity();
        for (int s = 0; s < cfg.seed_count; ++s) {
            const ClockRun run =
                simulate_clock(cfg.m, lambda, cfg.slots,
                               base_seed + static_cast<std::uint64_t>(s), "clock-local", false);
            silent += run.silent_slots;
            total += run.slots;
            c.estimate = std::min(c.estimate, run.long_drift.slope);
            c.lo = std::min(c.lo, run.long_drift.lo());
            c.hi = std::max(c.hi, run.long_drift.hi());
            c.samples += run.long_drift.samples;
            if (!(run.long_drift.lo() > 0.0)) c.pass = false;
        }
        c.detail = "immediate transmission at lambda=ln(m)/m=" + num(lambda) +
                   "; long-link drift must stay positive; smallest slope shown";
        report.criteria.push_back(std::move(c));
    }

    {
        const double expected =
            std::pow(1.0 - lambda, static_cast<double>(cfg.m - 1));
        const double p_hat = static_cast<double>(silent) / static_cast<double>(total);
        const double se =
            std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / static_cast<double>(total));
        CriterionResult c;
        c.name = "local-clock-silent-fraction";
        c.estimate = p_hat;
        c.lo = p_hat - 3.0 * se;
        c.hi = p_hat + 3.0 * se;
        c.threshold = expected;
        c.samples = total;
        c.pass = std::abs(p_hat - expected) <= 3.0 * se;
        c.detail = "share of slots with no short transmission vs (1-lambda)^(m-1)";
        report.criteria.push_back(std::move(c));
    }
    return report;
}

const std::map<std::string, ExperimentFn>& experiment_registry() {
    static const std::map<std::string, ExperimentFn> registry = {
        {"mac-stability",
         [](std::uint64_t seed, int jobs) {
             MacStabilityConfig cfg;
             cfg.jobs = jobs;
             return run_mac_stability_experiment(cfg, seed);
         }},
        {"cleanup-rate",
         [](std::uint64_t seed, int) {
             return run_cleanup_rate_experiment(CleanupRateConfig{}, seed);
         }},
        {"latency-scaling",
         [](std::uint64_t seed, int) {
             return run_latency_scaling_experiment(LatencyScalingConfig{}, seed);
         }},
        {"adversarial",
         [](std::uint64_t seed, int) {
             return run_adversarial_experiment(AdversarialConfig{}, seed);
         }},
        {"local-clock",
         [](std::uint64_t seed, int) {
             return run_local_clock_experiment(LocalClockConfig{}, seed);
         }},
    };
    return registry;
}

std::string format_report(const ExperimentReport& report) {
    std::string out = "scenario: " + report.scenario + "\nseeds:";
    for (const auto seed : report.seeds) out += " " + std::to_string(seed);
    out += "\n";
    for (const auto& c : report.criteria) {
        char line[512];
        std::snprintf(line, sizeof line,
                      "%-26s %s estimate=%-12.6g ci=[%.6g, %.6g] bound=%-10.6g n=%lld",
                      c.name.c_str(), c.pass ? "PASS" : "FAIL", c.estimate, c.lo, c.hi,
                      c.threshold, static_cast<long long>(c.samples));
        out += line;
        if (!c.detail.empty()) out += "  (" + c.detail + ")";
        out += "\n";
    }
    out += std::string("overall: ") + (report.all_pass() ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace dynsched
