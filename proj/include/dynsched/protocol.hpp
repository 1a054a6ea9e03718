#pragma once

// The frame protocol: time is cut into frames of T slots, phase 1 runs the
// scheduler on every active packet's next hop, phase 2 lets each backlogged
// link offer its oldest failed packet for a low-rate clean-up run.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "dynsched/core.hpp"
#include "dynsched/injection.hpp"
#include "dynsched/oracles.hpp"
#include "dynsched/schedulers.hpp"

namespace dynsched {

struct FrameConfig {
    double epsilon = 0.0;
    double lambda = 0.0;       // design injection rate (1 - epsilon) / f(m)
    std::int64_t T = 0;        // frame length in slots
    double J = 0.0;            // per-frame admission budget (1 + epsilon) * lambda * T
    std::int64_t t_prime = 0;  // phase-1 slots
    std::int64_t cleanup_slots = 0;
    bool override_t = false;   // true when T was forced below theory, out-of-theory mode
    int m = 0;
    SchedulerDescriptor scheduler;
};

// Smallest admissible frame length via doubling then bisection:
//   T >= 100 f(m)/eps^3 + 48 f(m) ln(m)/eps^2   and
//   T >= (4 f(m)/eps^2) * g(m, (m/f(m)) * T).
// Throws when no T <= 2^30 qualifies or the descriptor is not affine.
FrameConfig compute_frame_params(double epsilon, const SchedulerDescriptor& scheduler, int m);

// Same derived quantities but with the frame length pinned to override_t_slots.
// Phase budgets are re-split so they still fit: the clean-up phase gets
// min(formula, planned(1, mJ), T/4) slots and phase 1 the remainder.
FrameConfig compute_frame_params_override(double epsilon, const SchedulerDescriptor& scheduler,
                                          int m, std::int64_t override_t_slots);

struct DelayWrapperConfig {
    std::int64_t delta_max = 1;  // admission delay in frames, uniform on {0..delta_max-1}
    double lambda_prime = 0.0;   // 1 - epsilon/2; divide by f(m) for the admissible rate
    double effective_epsilon = 0.0;
};

// Adversarial front end: delta_max = ceil(2 (D + w) / epsilon); the downstream
// frame parameters must be computed with epsilon / 2.
DelayWrapperConfig make_delay_wrapper(double epsilon, int max_path_length, std::int64_t window);

struct ProtocolState {
    std::int64_t frame_index = 0;
    std::vector<Packet> pending;                   // injected, waiting for admission
    std::vector<Packet> active;                    // advancing one hop per frame
    std::vector<std::deque<Packet>> failed_buffers;  // per link, oldest first
    std::int64_t potential = 0;                    // running sum of failed packets' remaining hops
    std::uint64_t next_packet_id = 0;
    std::uint64_t delivered_count = 0;
    std::uint64_t injected_count = 0;

    explicit ProtocolState(int link_count)
        : failed_buffers(static_cast<std::size_t>(link_count)) {}

    std::int64_t failed_backlog() const;
    std::int64_t backlog() const;
};

// Recomputed from scratch; the incrementally maintained state.potential must
// always agree.
std::int64_t potential(const ProtocolState& state);

struct FrameReport {
    std::int64_t frame = 0;
    std::int64_t injections = 0;  // injected during this frame (filled by the caller)
    std::int64_t admitted = 0;
    std::int64_t deliveries = 0;
    std::int64_t phase1_served = 0;
    std::int64_t new_failures = 0;
    std::int64_t new_failed_mass = 0;  // remaining hops the fresh failures carry
    std::int64_t cleanup_successes = 0;
    std::int64_t backlog = 0;
    std::int64_t failed_backlog = 0;
    std::int64_t potential = 0;  // at frame end
};

struct PacketRow {
    std::uint64_t id;
    int d;
    std::int64_t injection_slot;
    std::int64_t delivery_slot;
    bool ever_failed;
};

struct LatencyAccum {
    std::int64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct MetricsLog {
    std::vector<FrameReport> per_frame;
    std::vector<PacketRow> per_packet;          // delivered packets, optional
    std::map<int, LatencyAccum> latency_by_d;   // always aggregated
    std::int64_t T = 0;
    double J = 0.0;
    int m = 0;
    std::uint64_t seed = 0;
    std::uint64_t injected_total = 0;
    std::uint64_t delivered_total = 0;
};

struct DeliverySink {
    std::vector<PacketRow>* rows = nullptr;
    std::map<int, LatencyAccum>* latency = nullptr;

    void record(const Packet& p);
};

// Advances the state by one frame. Injections are the caller's business; the
// report's injections field is left 0 here.
FrameReport run_frame(ProtocolState& state, const FrameConfig& config,
                      const SuccessOracle& oracle, RngStream& scheduler_rng,
                      RngStream& cleanup_rng, DeliverySink sink = {});

struct InjectionSource {
    enum class Kind { stochastic, adversarial };
    Kind kind = Kind::stochastic;
    const StochasticInjectionSpec* spec = nullptr;
    const AdversarialTrace* trace = nullptr;
    std::optional<DelayWrapperConfig> wrapper;  // adversarial admission delays

    static InjectionSource stochastic(const StochasticInjectionSpec& s);
    static InjectionSource adversarial(const AdversarialTrace& t,
                                       std::optional<DelayWrapperConfig> w = std::nullopt);
};

struct SimulationOptions {
    std::int64_t horizon_frames = 0;
    std::uint64_t seed = 0;
    bool record_per_packet = true;
    bool validate_trace = true;
};

// Slot-accurate frame loop: every injection lands on its exact slot, packets
// are admitted at the following frame boundary (plus the wrapper delay when
// present). Identical seeds and inputs reproduce the log bit for bit.
MetricsLog run_simulation(const NetworkInstance& net, const InterferenceMatrix& w,
                          const FrameConfig& config, const InjectionSource& source,
                          const SuccessOracle& oracle, const SimulationOptions& options);

}  // namespace dynsched
