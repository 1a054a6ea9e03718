#include "dynsched/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dynsched {

namespace {

constexpr double kTol = 1e-9;
constexpr std::int64_t kMaxFrame = std::int64_t{1} << 30;

std::int64_t ceil_to_int(double x) {
    if (!(x > 0.0)) return 0;
    return static_cast<std::int64_t>(std::ceil(x - 1e-12));
}

void check_profile(double epsilon, const SchedulerDescriptor& scheduler, int m) {
    if (!(epsilon > 0.0) || !(epsilon <= 0.5))
        throw std::invalid_argument("epsilon must lie in (0, 1/2]");
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (scheduler.profile.kind != BoundProfile::Kind::affine || !scheduler.profile.f ||
        !scheduler.profile.g)
        throw std::invalid_argument("frame protocol needs an affine schedule-length profile");
}

}  // namespace

FrameConfig compute_frame_params(double epsilon, const SchedulerDescriptor& scheduler, int m) {
    check_profile(epsilon, scheduler, m);
    const double f = scheduler.profile.f(static_cast<double>(m));
    if (!(f > 0.0)) throw std::invalid_argument("profile f(m) must be positive");
    const double eps2 = epsilon * epsilon;
    const double floor1 =
        100.0 * f / (eps2 * epsilon) + 48.0 * f * std::log(static_cast<double>(m)) / eps2;
    auto admissible = [&](std::int64_t t) {
        const double td = static_cast<double>(t);
        if (td + kTol < floor1) return false;
        const double need =
            (4.0 * f / eps2) *
            scheduler.profile.g(static_cast<double>(m), (static_cast<double>(m) / f) * td);
        return td + kTol >= need;
    };
    std::int64_t hi = std::max<std::int64_t>(1, ceil_to_int(floor1));
    std::int64_t lo = 0;
    while (!admissible(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > kMaxFrame)
            throw std::runtime_error("no admissible frame length up to 2^30 slots");
    }
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (admissible(mid))
            hi = mid;
        else
            lo = mid;
    }

    FrameConfig config;
    config.epsilon = epsilon;
    config.m = m;
    config.scheduler = scheduler;
    config.T = hi;
    config.lambda = (1.0 - epsilon) / f;
    config.J = (1.0 + epsilon) * config.lambda * static_cast<double>(config.T);
    const double gg = scheduler.profile.g(static_cast<double>(m),
                                          static_cast<double>(m) * config.J);
    config.t_prime = ceil_to_int(f * config.J + gg);
    config.cleanup_slots = std::max<std::int64_t>(1, ceil_to_int(f + gg));
    if (config.t_prime + config.cleanup_slots > config.T)
        throw std::logic_error("phase budgets do not fit the frame");
    return config;
}

FrameConfig compute_frame_params_override(double epsilon, const SchedulerDescriptor& scheduler,
                                          int m, std::int64_t override_t_slots) {
    check_profile(epsilon, scheduler, m);
    if (override_t_slots < 2)
        throw std::invalid_argument("forced frame length must be at least 2 slots");
    const double f = scheduler.profile.f(static_cast<double>(m));
    if (!(f > 0.0)) throw std::invalid_argument("profile f(m) must be positive");

    FrameConfig config;
    config.epsilon = epsilon;
    config.m = m;
    config.scheduler = scheduler;
    config.override_t = true;
    config.T = override_t_slots;
    config.lambda = (1.0 - epsilon) / f;
    config.J = (1.0 + epsilon) * config.lambda * static_cast<double>(config.T);
    const double n_bound = static_cast<double>(m) * config.J;
    const double gg = scheduler.profile.g(static_cast<double>(m), n_bound);
    std::int64_t cleanup = ceil_to_int(f + gg);
    if (scheduler.algorithm)
        cleanup = std::min(cleanup, scheduler.algorithm->planned_slots(1.0, n_bound));
    cleanup = std::min(cleanup, std::max<std::int64_t>(config.T / 4, 1));
    config.cleanup_slots = std::max<std::int64_t>(1, cleanup);
    config.t_prime = config.T - config.cleanup_slots;
    return config;
}

DelayWrapperConfig make_delay_wrapper(double epsilon, int max_path_length,
                                      std::int64_t window) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0,1)");
    if (max_path_length < 1) throw std::invalid_argument("path length bound must be positive");
    if (window < 1) throw std::invalid_argument("window length must be at least 1");
    DelayWrapperConfig wrapper;
    wrapper.delta_max = std::max<std::int64_t>(
        1, ceil_to_int(2.0 * (static_cast<double>(max_path_length) +
                              static_cast<double>(window)) /
                       epsilon));
    wrapper.effective_epsilon = epsilon / 2.0;
    wrapper.lambda_prime = 1.0 - epsilon / 2.0;
    return wrapper;
}

std::int64_t ProtocolState::failed_backlog() const {
    std::int64_t total = 0;
    for (const auto& buffer : failed_buffers) total += static_cast<std::int64_t>(buffer.size());
    return total;
}

std::int64_t ProtocolState::backlog() const {
    return static_cast<std::int64_t>(pending.size()) + static_cast<std::int64_t>(active.size()) +
           failed_backlog();
}

std::int64_t potential(const ProtocolState& state) {
    std::int64_t total = 0;
    for (const auto& buffer : state.failed_buffers)
        for (const auto& p : buffer) total += p.remaining_hops();
    return total;
}

void DeliverySink::record(const Packet& p) {
    const int d = p.path_length();
    const auto lat = static_cast<double>(*p.delivery_slot - p.injection_slot);
    if (latency) {
        auto& acc = (*latency)[d];
        ++acc.count;
        acc.sum += lat;
        acc.sum_sq += lat * lat;
    }
    if (rows)
        rows->push_back(PacketRow{p.id, d, p.injection_slot, *p.delivery_slot,
                                  p.fail_slot.has_value()});
}

FrameReport run_frame(ProtocolState& state, const FrameConfig& config,
                      const SuccessOracle& oracle, RngStream& scheduler_rng,
                      RngStream& cleanup_rng, DeliverySink sink) {
    if (!config.scheduler.algorithm)
        throw std::invalid_argument("frame config carries no scheduling algorithm");
    FrameReport rep;
    rep.frame = state.frame_index;
    const std::int64_t frame_start = state.frame_index * config.T;
    const auto link_count = static_cast<int>(state.failed_buffers.size());

    // admission: every pending packet whose wait expired becomes active; phase 1
    // keeps its fixed (J, mJ) parameters even when the cohort overshoots J
    if (!state.pending.empty()) {
        std::size_t keep = 0;
        for (std::size_t i = 0; i < state.pending.size(); ++i) {
            Packet& p = state.pending[i];
            if (p.admission_frame <= state.frame_index) {
                p.state = PacketState::active;
                state.active.push_back(std::move(p));
                ++rep.admitted;
            } else {
                if (keep != i) state.pending[keep] = std::move(p);
                ++keep;
            }
        }
        state.pending.resize(keep);
    }

    // phase 1: every active packet requests its current hop
    if (!state.active.empty()) {
        std::vector<Request> requests;
        requests.reserve(state.active.size());
        for (const Packet& p : state.active) requests.push_back(Request{p.next_hop(), p.id});
        const ScheduleRun run = config.scheduler.algorithm->run(
            requests, config.J, static_cast<double>(config.m) * config.J, config.t_prime,
            oracle, scheduler_rng, false);
        std::size_t keep = 0;
        for (std::size_t i = 0; i < state.active.size(); ++i) {
            Packet& p = state.active[i];
            if (run.outcomes[i].served) {
                ++rep.phase1_served;
                ++p.hop_index;
                if (p.delivered()) {
                    p.state = PacketState::delivered;
                    p.delivery_slot = frame_start + run.outcomes[i].slot;
                    ++state.delivered_count;
                    ++rep.deliveries;
                    sink.record(p);
                } else {
                    if (keep != i) state.active[keep] = std::move(p);
                    ++keep;
                }
            } else {
                const std::int64_t mass = p.remaining_hops();
                p.state = PacketState::failed;
                if (!p.fail_slot) p.fail_slot = frame_start + config.t_prime;
                ++rep.new_failures;
                rep.new_failed_mass += mass;
                state.potential += mass;
                state.failed_buffers[static_cast<std::size_t>(p.next_hop())].push_back(
                    std::move(p));
            }
        }
        state.active.resize(keep);
    }

    // phase 2: each backlogged link offers its oldest failed packet with
    // probability 1/m, then one clean-up run with parameters (1, mJ) serves
    // the offered set within the remaining slots
    const double p_offer = 1.0 / static_cast<double>(config.m);
    std::vector<Request> offers;
    std::vector<LinkId> offered;
    for (int e = 0; e < link_count; ++e) {
        auto& buffer = state.failed_buffers[static_cast<std::size_t>(e)];
        if (buffer.empty()) continue;
        if (!cleanup_rng.bernoulli(p_offer)) continue;
        offers.push_back(Request{e, buffer.front().id});
        offered.push_back(e);
    }
    if (!offers.empty()) {
        const ScheduleRun run = config.scheduler.algorithm->run(
            offers, 1.0, static_cast<double>(config.m) * config.J, config.cleanup_slots,
            oracle, cleanup_rng, false);
        for (std::size_t k = 0; k < offers.size(); ++k) {
            if (!run.outcomes[k].served) continue;
            auto& buffer = state.failed_buffers[static_cast<std::size_t>(offered[k])];
            Packet p = std::move(buffer.front());
            buffer.pop_front();
            --state.potential;
            ++rep.cleanup_successes;
            ++p.hop_index;
            if (p.delivered()) {
                p.state = PacketState::delivered;
                p.delivery_slot = frame_start + config.t_prime + run.outcomes[k].slot;
                ++state.delivered_count;
                ++rep.deliveries;
                sink.record(p);
            } else {
                state.failed_buffers[static_cast<std::size_t>(p.next_hop())].push_back(
                    std::move(p));
            }
        }
    }

    rep.backlog = state.backlog();
    rep.failed_backlog = state.failed_backlog();
    rep.potential = state.potential;
    ++state.frame_index;
    return rep;
}

InjectionSource InjectionSource::stochastic(const StochasticInjectionSpec& s) {
    InjectionSource src;
    src.kind = Kind::stochastic;
    src.spec = &s;
    return src;
}

InjectionSource InjectionSource::adversarial(const AdversarialTrace& t,
                                             std::optional<DelayWrapperConfig> w) {
    InjectionSource src;
    src.kind = Kind::adversarial;
    src.trace = &t;
    src.wrapper = w;
    return src;
}

MetricsLog run_simulation(const NetworkInstance& net, const InterferenceMatrix& w,
                          const FrameConfig& config, const InjectionSource& source,
                          const SuccessOracle& oracle, const SimulationOptions& options) {
    if (w.size() != net.link_count())
        throw std::invalid_argument("matrix size does not match the link count");
    if (source.kind == InjectionSource::Kind::stochastic) {
        if (!source.spec) throw std::invalid_argument("stochastic source without a spec");
        source.spec->validate(net.link_count());
    } else {
        if (!source.trace) throw std::invalid_argument("adversarial source without a trace");
        if (options.validate_trace) {
            const WindowCheck check = validate_window_trace(*source.trace, w);
            if (!check.ok)
                throw std::invalid_argument(
                    "trace violates its window bound in the window starting at slot " +
                    std::to_string(check.first_violating_window));
        }
    }

    MetricsLog log;
    log.T = config.T;
    log.J = config.J;
    log.m = config.m;
    log.seed = options.seed;
    ProtocolState state(net.link_count());
    RngStream scheduler_rng(options.seed, "scheduler");
    RngStream cleanup_rng(options.seed, "cleanup");
    RngStream wrapper_rng(options.seed, "wrapper");
    DeliverySink sink{options.record_per_packet ? &log.per_packet : nullptr,
                      &log.latency_by_d};

    std::optional<InjectionSampler> sampler;
    if (source.kind == InjectionSource::Kind::stochastic)
        sampler.emplace(*source.spec, options.seed);
    std::size_t trace_pos = 0;
    std::vector<InjectionSampler::Event> events;
    const std::int64_t delta_max = source.wrapper ? source.wrapper->delta_max : 1;

    auto enqueue = [&](std::int64_t slot, std::shared_ptr<const RoutePath> path) {
        Packet p;
        p.id = state.next_packet_id++;
        p.path = std::move(path);
        p.injection_slot = slot;
        // the wrapper delay counts whole frames past the next frame boundary
        const std::int64_t delay =
            source.wrapper ? static_cast<std::int64_t>(wrapper_rng.below(
                                 static_cast<std::uint64_t>(delta_max)))
                           : 0;
        p.admission_frame = slot / config.T + 1 + delay;
        state.pending.push_back(std::move(p));
        ++state.injected_count;
    };

    log.per_frame.reserve(static_cast<std::size_t>(options.horizon_frames));
    for (std::int64_t k = 0; k < options.horizon_frames; ++k) {
        const std::int64_t frame_end = (k + 1) * config.T;
        std::int64_t injected_this_frame = 0;
        if (sampler) {
            events.clear();
            sampler->events_before(frame_end, events);
            for (auto& ev : events) {
                enqueue(ev.slot, std::move(ev.path));
                ++injected_this_frame;
            }
        } else {
            const auto& injections = source.trace->injections;
            while (trace_pos < injections.size() &&
                   injections[trace_pos].slot < frame_end) {
                enqueue(injections[trace_pos].slot, injections[trace_pos].path);
                ++injected_this_frame;
                ++trace_pos;
            }
        }
        FrameReport rep = run_frame(state, config, oracle, scheduler_rng, cleanup_rng, sink);
        rep.injections = injected_this_frame;
        log.per_frame.push_back(rep);
    }
    log.injected_total = state.injected_count;
    log.delivered_total = state.delivered_count;
    return log;
}

}  // namespace dynsched
