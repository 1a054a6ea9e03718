#pragma once

// Static scheduling algorithms: given a fixed request multiset and bound
// parameters (measure I, count n), produce per-slot transmission attempts.
// Descriptors carry the schedule-length profile the dynamic protocol sizes
// its frames with.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynsched/core.hpp"
#include "dynsched/oracles.hpp"
#include "dynsched/rng.hpp"

namespace dynsched {

struct Request {
    LinkId link;
    std::uint64_t id;
};

struct RequestOutcome {
    std::uint64_t id = 0;
    bool served = false;
    std::int64_t slot = -1;  // 0-based slot of the successful attempt
};

struct ScheduleRun {
    std::int64_t slots_used = 0;
    std::vector<RequestOutcome> outcomes;               // aligned with the input requests
    std::vector<std::vector<Attempt>> per_slot_attempts;  // only filled when logging
    bool log_recorded = false;

    std::int64_t served_count() const;
    bool all_served() const;
};

enum class FeedbackKind { ack_only, channel_state };
enum class SchedulerSymmetry { symmetric, id_based };

struct BoundProfile {
    enum class Kind { multiplicative, affine };
    Kind kind = Kind::multiplicative;
    // multiplicative: schedule length f(n) * I; affine: f(m) * I + g(m, n)
    std::function<double(double)> f;
    std::function<double(double, double)> g;  // affine only
    double failure_exponent = 1.0;  // failure probability decays like n^-failure_exponent
};

class StaticScheduler {
public:
    virtual ~StaticScheduler() = default;

    // Runs on `requests` under the stated bounds, never exceeding slot_budget.
    // Stops as soon as everything is served. record_log retains the per-slot
    // attempt lists for replay validation.
    virtual ScheduleRun run(std::span<const Request> requests, double measure_bound,
                            double count_bound, std::int64_t slot_budget,
                            const SuccessOracle& oracle, RngStream& rng,
                            bool record_log) const = 0;

    // Worst-case slots a full run may consume under the given bounds.
    virtual std::int64_t planned_slots(double measure_bound, double count_bound) const = 0;

    virtual FeedbackKind feedback_requirement() const { return FeedbackKind::ack_only; }
};

struct SchedulerDescriptor {
    std::string name;
    BoundProfile profile;
    FeedbackKind feedback = FeedbackKind::ack_only;
    SchedulerSymmetry symmetry = SchedulerSymmetry::symmetric;
    std::shared_ptr<const StaticScheduler> algorithm;
};

// Each pending request tosses a coin with probability 1/(4 max(I,1)) per slot;
// per link one winner transmits. Runs at most ceil(c * max(I,1) * log2(n+1)) slots.
class RandomAccessScheduler final : public StaticScheduler {
public:
    explicit RandomAccessScheduler(double cap_constant = 64.0) : cap_constant_(cap_constant) {}
    ScheduleRun run(std::span<const Request> requests, double measure_bound,
                    double count_bound, std::int64_t slot_budget,
                    const SuccessOracle& oracle, RngStream& rng,
                    bool record_log) const override;
    std::int64_t planned_slots(double measure_bound, double count_bound) const override;

private:
    double cap_constant_;
};

struct MacSymmetricPlan {
    double s = 0.0;  // stage-2 inverse transmission probability
    std::int64_t xi = 0;
    std::vector<std::int64_t> stage1_rounds;
    std::int64_t stage2_slots = 0;

    std::int64_t total_slots() const;
};

MacSymmetricPlan mac_symmetric_plan(double count, double phi, double delta);

// Contention resolution on a shared channel without ids: geometrically
// shrinking random-delay rounds, then a long low-rate tail stage. The measure
// bound doubles as the population estimate; I <= 1 sends directly.
class MacSymmetricScheduler final : public StaticScheduler {
public:
    MacSymmetricScheduler(double phi, double delta);
    ScheduleRun run(std::span<const Request> requests, double measure_bound,
                    double count_bound, std::int64_t slot_budget,
                    const SuccessOracle& oracle, RngStream& rng,
                    bool record_log) const override;
    std::int64_t planned_slots(double measure_bound, double count_bound) const override;
    double phi() const { return phi_; }
    double delta() const { return delta_; }

private:
    double phi_;
    double delta_;
};

// Deterministic token passing over stations 0..m-1: a station drains its
// queue, one silent slot hands the channel to the next. Needs channel-state
// feedback; always finishes in exactly n + m slots.
class RoundRobinWithholdingScheduler final : public StaticScheduler {
public:
    explicit RoundRobinWithholdingScheduler(int station_count);
    ScheduleRun run(std::span<const Request> requests, double measure_bound,
                    double count_bound, std::int64_t slot_budget,
                    const SuccessOracle& oracle, RngStream& rng,
                    bool record_log) const override;
    std::int64_t planned_slots(double measure_bound, double count_bound) const override;
    FeedbackKind feedback_requirement() const override { return FeedbackKind::channel_state; }

private:
    int station_count_;
};

// Per-link FIFO service, every nonempty link attempts each slot. The workhorse
// for interference-free packet routing (identity matrix, f = 1, g = 0).
class SingleHopRoutingScheduler final : public StaticScheduler {
public:
    ScheduleRun run(std::span<const Request> requests, double measure_bound,
                    double count_bound, std::int64_t slot_budget,
                    const SuccessOracle& oracle, RngStream& rng,
                    bool record_log) const override;
    std::int64_t planned_slots(double measure_bound, double count_bound) const override;
};

struct TransformPlan {
    double chi = 0.0;
    double final_measure = 0.0;  // measure bound handed to the final-stage runs
    std::int64_t xi = 0;
    std::vector<std::int64_t> psi;  // delay-class counts per shrink iteration
    std::int64_t class_block_slots = 0;
    std::int64_t final_block_slots = 0;
    std::int64_t final_reps = 0;

    std::int64_t total_slots() const;
};

TransformPlan transform_dense_plan(double measure, double count, int m, double phi,
                                   const BoundProfile& base_profile);

// Dense-instance reduction: xi rounds of uniform random delays thin the load
// until the base algorithm's own regime applies, then ceil(phi)+1 mop-up runs.
// Block lengths are charged in full (time passes for everyone), so with an
// oracle that never succeeds the slot count equals the plan total exactly.
ScheduleRun transform_dense(const SchedulerDescriptor& base, std::span<const Request> requests,
                            double measure, double count, int m, double phi,
                            const SuccessOracle& oracle, RngStream& rng,
                            bool record_log = true);

class TransformedScheduler final : public StaticScheduler {
public:
    TransformedScheduler(SchedulerDescriptor base, int m, double phi);
    ScheduleRun run(std::span<const Request> requests, double measure_bound,
                    double count_bound, std::int64_t slot_budget,
                    const SuccessOracle& oracle, RngStream& rng,
                    bool record_log) const override;
    std::int64_t planned_slots(double measure_bound, double count_bound) const override;

private:
    SchedulerDescriptor base_;
    int m_;
    double phi_;
};

// Convenience entry points mirroring the algorithms' natural signatures.
ScheduleRun run_random_access(std::span<const Request> requests, double measure,
                              const SuccessOracle& oracle, RngStream& rng,
                              double cap_constant = 64.0, bool record_log = true);

ScheduleRun mac_symmetric(std::span<const Request> requests, double phi, double delta,
                          const SuccessOracle& oracle, RngStream& rng,
                          bool record_log = true);

// queue_sizes[i] packets wait at station i; requests are numbered station by
// station in queue order.
ScheduleRun mac_round_robin_withholding(std::span<const std::int64_t> queue_sizes,
                                        const SuccessOracle& oracle,
                                        bool record_log = true);

struct ScheduleValidation {
    bool ok = true;
    std::string reason;
    std::uint64_t request_id = 0;
};

// Replays a recorded run through the oracle: every request marked served must
// have exactly one successful attempt, and none may be served twice.
ScheduleValidation validate_schedule(std::span<const Request> requests,
                                     const ScheduleRun& run, const SuccessOracle& oracle);

SchedulerDescriptor make_random_access_descriptor(double cap_constant = 64.0);
SchedulerDescriptor make_mac_symmetric_descriptor(double phi, double delta);
SchedulerDescriptor make_round_robin_descriptor(int station_count);
SchedulerDescriptor make_single_hop_routing_descriptor();
SchedulerDescriptor make_transformed_descriptor(const SchedulerDescriptor& base, int m,
                                                double phi);

}  // namespace dynsched
