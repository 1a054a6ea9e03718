#include "dynsched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace dynsched {

namespace {

constexpr double kE = 2.718281828459045235;

std::int64_t ceil_to_int(double x) {
    if (!(x > 0.0)) return 0;
    return static_cast<std::int64_t>(std::ceil(x - 1e-12));
}

double log2_of(double x) { return std::log2(x); }

void init_outcomes(ScheduleRun& run, std::span<const Request> requests) {
    run.outcomes.resize(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i)
        run.outcomes[i] = RequestOutcome{requests[i].id, false, -1};
}

// Shared slot resolution: the slot's intenders are collapsed to one holder per
// link (chosen uniformly among them), the oracle judges the attempt set, and
// served requests leave `pending`. Intender and winner draws follow ascending
// link order so runs replay identically under one seed.
class SlotEngine {
public:
    SlotEngine(std::span<const Request> requests, const SuccessOracle& oracle, RngStream& rng,
               bool record_log, ScheduleRun& run)
        : requests_(requests), oracle_(oracle), rng_(rng), record_log_(record_log), run_(run) {}

    // intenders: indices into requests_. Returns how many were served.
    int resolve(std::vector<std::uint32_t>& intenders, std::int64_t slot) {
        attempts_.clear();
        owners_.clear();
        if (!intenders.empty()) {
            std::sort(intenders.begin(), intenders.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          const LinkId la = requests_[a].link;
                          const LinkId lb = requests_[b].link;
                          if (la != lb) return la < lb;
                          return a < b;
                      });
            std::size_t i = 0;
            while (i < intenders.size()) {
                std::size_t j = i + 1;
                while (j < intenders.size() &&
                       requests_[intenders[j]].link == requests_[intenders[i]].link)
                    ++j;
                const std::size_t group = j - i;
                const std::size_t pick =
                    group == 1 ? i : i + static_cast<std::size_t>(rng_.below(group));
                const std::uint32_t req = intenders[pick];
                attempts_.push_back(Attempt{requests_[req].link, requests_[req].id});
                owners_.push_back(req);
                i = j;
            }
        }
        int served = 0;
        if (!attempts_.empty()) {
            oracle_.evaluate(attempts_, feedback_);
            for (std::size_t k = 0; k < attempts_.size(); ++k) {
                if (feedback_.success[k]) {
                    auto& o = run_.outcomes[owners_[k]];
                    o.served = true;
                    o.slot = slot;
                    ++served;
                }
            }
        }
        if (record_log_) run_.per_slot_attempts.push_back(attempts_);
        return served;
    }

private:
    std::span<const Request> requests_;
    const SuccessOracle& oracle_;
    RngStream& rng_;
    bool record_log_;
    ScheduleRun& run_;
    std::vector<Attempt> attempts_;
    std::vector<std::uint32_t> owners_;
    SlotFeedback feedback_;
};

void drop_served(std::vector<std::uint32_t>& pending, const ScheduleRun& run) {
    pending.erase(std::remove_if(pending.begin(), pending.end(),
                                 [&](std::uint32_t i) { return run.outcomes[i].served; }),
                  pending.end());
}

}  // namespace

std::int64_t ScheduleRun::served_count() const {
    std::int64_t n = 0;
    for (const auto& o : outcomes)
        if (o.served) ++n;
    return n;
}

bool ScheduleRun::all_served() const {
    return served_count() == static_cast<std::int64_t>(outcomes.size());
}

// ---------------------------------------------------------------------------
// random access

ScheduleRun RandomAccessScheduler::run(std::span<const Request> requests, double measure_bound,
                                       double count_bound, std::int64_t slot_budget,
                                       const SuccessOracle& oracle, RngStream& rng,
                                       bool record_log) const {
    if (!(measure_bound > 0.0))
        throw std::invalid_argument("random access needs a positive interference bound");
    ScheduleRun run;
    run.log_recorded = record_log;
    init_outcomes(run, requests);
    if (requests.empty()) return run;
    const double p = 1.0 / (4.0 * std::max(measure_bound, 1.0));
    const std::int64_t cap = planned_slots(measure_bound, count_bound);
    const std::int64_t budget = std::min(slot_budget, cap);
    SlotEngine engine(requests, oracle, rng, record_log, run);
    std::vector<std::uint32_t> pending(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) pending[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> intenders;
    for (std::int64_t slot = 0; slot < budget; ++slot) {
        intenders.clear();
        for (std::uint32_t i : pending)
            if (rng.bernoulli(p)) intenders.push_back(i);
        if (engine.resolve(intenders, slot) > 0) {
            drop_served(pending, run);
            if (pending.empty()) {
                run.slots_used = slot + 1;
                return run;
            }
        }
    }
    run.slots_used = budget;
    return run;
}

std::int64_t RandomAccessScheduler::planned_slots(double measure_bound,
                                                  double count_bound) const {
    const double i = std::max(measure_bound, 1.0);
    const double n = std::max(count_bound, 0.0);
    return ceil_to_int(cap_constant_ * i * log2_of(n + 1.0));
}

ScheduleRun run_random_access(std::span<const Request> requests, double measure,
                              const SuccessOracle& oracle, RngStream& rng,
                              double cap_constant, bool record_log) {
    RandomAccessScheduler scheduler(cap_constant);
    return scheduler.run(requests, measure, static_cast<double>(requests.size()),
                         std::numeric_limits<std::int64_t>::max(), oracle, rng, record_log);
}

// ---------------------------------------------------------------------------
// symmetric contention resolution on a shared channel

MacSymmetricPlan mac_symmetric_plan(double count, double phi, double delta) {
    if (!(count >= 2.0)) throw std::invalid_argument("plan needs a population of at least 2");
    if (!(phi >= 1.0)) throw std::invalid_argument("phi must be at least 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    MacSymmetricPlan plan;
    plan.s = 2.0 * phi * std::log(count) *
             (2.0 * kE * kE * (1.0 + delta) * (1.0 + delta) / (delta * delta));
    const double shrink = 1.0 - 1.0 / (kE * (1.0 + delta));
    double x = count;
    while (x > plan.s) {
        x *= shrink;
        ++plan.xi;
    }
    plan.stage1_rounds.reserve(static_cast<std::size_t>(plan.xi));
    for (std::int64_t i = 1; i <= plan.xi; ++i) {
        const double width = std::floor(std::pow(shrink, static_cast<double>(i)) * count);
        plan.stage1_rounds.push_back(std::max<std::int64_t>(1, static_cast<std::int64_t>(width)));
    }
    plan.stage2_slots = ceil_to_int(plan.s * kE * (phi + 1.0) * std::log(count));
    return plan;
}

std::int64_t MacSymmetricPlan::total_slots() const {
    std::int64_t total = stage2_slots;
    for (auto r : stage1_rounds) total += r;
    return total;
}

MacSymmetricScheduler::MacSymmetricScheduler(double phi, double delta)
    : phi_(phi), delta_(delta) {
    if (!(phi >= 1.0)) throw std::invalid_argument("phi must be at least 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
}

ScheduleRun MacSymmetricScheduler::run(std::span<const Request> requests, double measure_bound,
                                       double count_bound, std::int64_t slot_budget,
                                       const SuccessOracle& oracle, RngStream& rng,
                                       bool record_log) const {
    ScheduleRun run;
    run.log_recorded = record_log;
    init_outcomes(run, requests);
    if (requests.empty()) return run;
    SlotEngine engine(requests, oracle, rng, record_log, run);
    std::vector<std::uint32_t> pending(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) pending[i] = static_cast<std::uint32_t>(i);

    // a measure bound of 1 promises a lone packet: send it straight away
    if (std::ceil(measure_bound) <= 1.0 || requests.size() == 1) {
        if (slot_budget < 1) return run;
        std::vector<std::uint32_t> everyone = pending;
        engine.resolve(everyone, 0);
        run.slots_used = 1;
        return run;
    }

    const double population = std::max(2.0, std::ceil(std::min(measure_bound, count_bound)));
    const MacSymmetricPlan plan = mac_symmetric_plan(population, phi_, delta_);
    std::int64_t consumed = 0;
    std::int64_t remaining = static_cast<std::int64_t>(requests.size());
    std::vector<std::uint32_t> intenders;
    std::vector<std::int64_t> offsets;
    std::vector<std::uint32_t> order;

    for (std::size_t round = 0; round < plan.stage1_rounds.size(); ++round) {
        const std::int64_t psi = plan.stage1_rounds[round];
        // counting sort of pending requests into their drawn delay classes
        std::vector<std::int64_t> delay(pending.size());
        offsets.assign(static_cast<std::size_t>(psi) + 1, 0);
        for (std::size_t i = 0; i < pending.size(); ++i) {
            delay[i] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(psi)));
            ++offsets[static_cast<std::size_t>(delay[i]) + 1];
        }
        for (std::size_t j = 1; j < offsets.size(); ++j) offsets[j] += offsets[j - 1];
        order.assign(pending.size(), 0);
        {
            std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
            for (std::size_t i = 0; i < pending.size(); ++i)
                order[static_cast<std::size_t>(cursor[static_cast<std::size_t>(delay[i])]++)] =
                    pending[i];
        }
        for (std::int64_t j = 0; j < psi; ++j) {
            if (consumed >= slot_budget) {
                run.slots_used = consumed;
                return run;
            }
            intenders.assign(order.begin() + offsets[static_cast<std::size_t>(j)],
                             order.begin() + offsets[static_cast<std::size_t>(j) + 1]);
            remaining -= engine.resolve(intenders, consumed);
            ++consumed;
            if (remaining == 0) {
                run.slots_used = consumed;
                return run;
            }
        }
        drop_served(pending, run);
    }

    const double p2 = 1.0 / plan.s;
    for (std::int64_t t = 0; t < plan.stage2_slots; ++t) {
        if (consumed >= slot_budget) break;
        intenders.clear();
        for (std::uint32_t i : pending)
            if (rng.bernoulli(p2)) intenders.push_back(i);
        const int served = engine.resolve(intenders, consumed);
        ++consumed;
        if (served > 0) {
            remaining -= served;
            drop_served(pending, run);
            if (remaining == 0) break;
        }
    }
    run.slots_used = consumed;
    return run;
}

std::int64_t MacSymmetricScheduler::planned_slots(double measure_bound,
                                                  double count_bound) const {
    if (std::ceil(measure_bound) <= 1.0) return 1;
    const double population = std::max(2.0, std::ceil(std::min(measure_bound, count_bound)));
    return mac_symmetric_plan(population, phi_, delta_).total_slots();
}

ScheduleRun mac_symmetric(std::span<const Request> requests, double phi, double delta,
                          const SuccessOracle& oracle, RngStream& rng, bool record_log) {
    MacSymmetricScheduler scheduler(phi, delta);
    const double n = static_cast<double>(requests.size());
    return scheduler.run(requests, n, n, std::numeric_limits<std::int64_t>::max(), oracle, rng,
                         record_log);
}

// ---------------------------------------------------------------------------
// round robin with withholding

RoundRobinWithholdingScheduler::RoundRobinWithholdingScheduler(int station_count)
    : station_count_(station_count) {
    if (station_count < 1) throw std::invalid_argument("need at least one station");
}

ScheduleRun RoundRobinWithholdingScheduler::run(std::span<const Request> requests,
                                                double /*measure_bound*/,
                                                double /*count_bound*/,
                                                std::int64_t slot_budget,
                                                const SuccessOracle& oracle, RngStream& /*rng*/,
                                                bool record_log) const {
    if (!oracle.provides_channel_state())
        throw std::invalid_argument(
            "round robin withholding needs channel-state feedback from the oracle");
    ScheduleRun run;
    run.log_recorded = record_log;
    init_outcomes(run, requests);
    std::vector<std::vector<std::uint32_t>> queues(static_cast<std::size_t>(station_count_));
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const LinkId st = requests[i].link;
        if (st < 0 || st >= station_count_)
            throw std::invalid_argument("request on station " + std::to_string(st) +
                                        " outside 0.." + std::to_string(station_count_ - 1));
        queues[static_cast<std::size_t>(st)].push_back(static_cast<std::uint32_t>(i));
    }
    std::int64_t slot = 0;
    std::vector<Attempt> attempts;
    SlotFeedback feedback;
    for (int st = 0; st < station_count_; ++st) {
        auto& q = queues[static_cast<std::size_t>(st)];
        std::size_t head = 0;
        for (;;) {
            if (slot >= slot_budget) {
                run.slots_used = slot;
                return run;
            }
            if (head >= q.size()) {
                // empty queue: one withheld slot signals the handoff
                if (record_log) run.per_slot_attempts.emplace_back();
                ++slot;
                break;
            }
            const std::uint32_t idx = q[head];
            attempts.assign(1, Attempt{requests[idx].link, requests[idx].id});
            oracle.evaluate(attempts, feedback);
            if (record_log) run.per_slot_attempts.push_back(attempts);
            if (feedback.success[0]) {
                run.outcomes[idx].served = true;
                run.outcomes[idx].slot = slot;
                ++head;
            }
            ++slot;
        }
    }
    run.slots_used = slot;
    return run;
}

std::int64_t RoundRobinWithholdingScheduler::planned_slots(double measure_bound,
                                                           double /*count_bound*/) const {
    return ceil_to_int(std::max(measure_bound, 0.0)) + station_count_;
}

ScheduleRun mac_round_robin_withholding(std::span<const std::int64_t> queue_sizes,
                                        const SuccessOracle& oracle, bool record_log) {
    std::vector<Request> requests;
    std::uint64_t id = 0;
    for (std::size_t st = 0; st < queue_sizes.size(); ++st)
        for (std::int64_t k = 0; k < queue_sizes[st]; ++k)
            requests.push_back(Request{static_cast<LinkId>(st), id++});
    RoundRobinWithholdingScheduler scheduler(static_cast<int>(queue_sizes.size()));
    RngStream unused;
    return scheduler.run(requests, static_cast<double>(requests.size()),
                         static_cast<double>(requests.size()),
                         std::numeric_limits<std::int64_t>::max(), oracle, unused, record_log);
}

// ---------------------------------------------------------------------------
// trivial single-hop routing service

ScheduleRun SingleHopRoutingScheduler::run(std::span<const Request> requests,
                                           double /*measure_bound*/, double /*count_bound*/,
                                           std::int64_t slot_budget, const SuccessOracle& oracle,
                                           RngStream& /*rng*/, bool record_log) const {
    ScheduleRun run;
    run.log_recorded = record_log;
    init_outcomes(run, requests);
    if (requests.empty()) return run;
    std::unordered_map<LinkId, std::vector<std::uint32_t>> by_link;
    for (std::size_t i = 0; i < requests.size(); ++i)
        by_link[requests[i].link].push_back(static_cast<std::uint32_t>(i));
    std::vector<LinkId> links;
    links.reserve(by_link.size());
    for (const auto& [link, q] : by_link) links.push_back(link);
    std::sort(links.begin(), links.end());
    std::vector<std::size_t> heads(links.size(), 0);
    std::int64_t remaining = static_cast<std::int64_t>(requests.size());
    std::int64_t slot = 0;
    std::vector<Attempt> attempts;
    std::vector<std::size_t> owners;
    SlotFeedback feedback;
    while (remaining > 0 && slot < slot_budget) {
        attempts.clear();
        owners.clear();
        for (std::size_t li = 0; li < links.size(); ++li) {
            const auto& q = by_link[links[li]];
            if (heads[li] < q.size()) {
                attempts.push_back(Attempt{links[li], requests[q[heads[li]]].id});
                owners.push_back(li);
            }
        }
        oracle.evaluate(attempts, feedback);
        for (std::size_t k = 0; k < attempts.size(); ++k) {
            if (!feedback.success[k]) continue;
            const std::size_t li = owners[k];
            const std::uint32_t idx = by_link[links[li]][heads[li]];
            run.outcomes[idx].served = true;
            run.outcomes[idx].slot = slot;
            ++heads[li];
            --remaining;
        }
        if (record_log) run.per_slot_attempts.push_back(attempts);
        ++slot;
    }
    run.slots_used = slot;
    return run;
}

std::int64_t SingleHopRoutingScheduler::planned_slots(double measure_bound,
                                                      double /*count_bound*/) const {
    return std::max<std::int64_t>(1, ceil_to_int(measure_bound));
}

// ---------------------------------------------------------------------------
// dense-instance transformation

TransformPlan transform_dense_plan(double measure, double count, int m, double phi,
                                   const BoundProfile& base_profile) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (!(phi >= 1.0)) throw std::invalid_argument("phi must be at least 1");
    if (base_profile.kind != BoundProfile::Kind::multiplicative)
        throw std::invalid_argument("transformation needs a multiplicative base profile");
    TransformPlan plan;
    plan.chi = 6.0 * (std::log(static_cast<double>(m)) + 9.0);
    const double l2 = log2_of(std::max(count, 2.0));
    plan.final_measure = 2.0 * phi * plan.chi * l2;
    if (measure > plan.final_measure)
        plan.xi = ceil_to_int(log2_of(measure / plan.final_measure));
    for (std::int64_t i = 1; i <= plan.xi; ++i)
        plan.psi.push_back(ceil_to_int(std::pow(2.0, 1.0 - static_cast<double>(i)) * measure /
                                       plan.chi));
    plan.class_block_slots =
        ceil_to_int(base_profile.f(static_cast<double>(m) * plan.chi) * plan.chi);
    plan.final_block_slots = ceil_to_int(base_profile.f(count) * plan.final_measure);
    plan.final_reps = ceil_to_int(phi) + 1;
    return plan;
}

std::int64_t TransformPlan::total_slots() const {
    std::int64_t total = final_reps * final_block_slots;
    for (auto psi_i : psi) total += psi_i * class_block_slots;
    return total;
}

namespace {

ScheduleRun transform_dense_impl(const SchedulerDescriptor& base,
                                 std::span<const Request> requests, double measure,
                                 double count, int m, double phi, const SuccessOracle& oracle,
                                 RngStream& rng, bool record_log, std::int64_t slot_budget) {
    if (!base.algorithm) throw std::invalid_argument("base descriptor has no algorithm");
    ScheduleRun run;
    run.log_recorded = record_log;
    init_outcomes(run, requests);
    if (count <= 0.0 || requests.empty()) return run;
    const TransformPlan plan = transform_dense_plan(measure, count, m, phi, base.profile);

    std::vector<std::uint32_t> pending(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) pending[i] = static_cast<std::uint32_t>(i);
    std::int64_t consumed = 0;
    std::vector<Request> subset;
    std::vector<std::uint32_t> subset_index;

    // Merges an inner block run. charged is the block length billed to the
    // total whether or not the inner run stopped early.
    auto absorb = [&](const ScheduleRun& inner, const std::vector<std::uint32_t>& index,
                      std::int64_t charged, bool final_block) {
        for (std::size_t k = 0; k < inner.outcomes.size(); ++k) {
            if (!inner.outcomes[k].served) continue;
            auto& o = run.outcomes[index[k]];
            o.served = true;
            o.slot = consumed + inner.outcomes[k].slot;
        }
        if (record_log) {
            for (const auto& slot_attempts : inner.per_slot_attempts)
                run.per_slot_attempts.push_back(slot_attempts);
            if (!final_block)
                for (std::int64_t pad = inner.slots_used; pad < charged; ++pad)
                    run.per_slot_attempts.emplace_back();
        }
    };

    for (std::size_t i = 0; i < plan.psi.size(); ++i) {
        const std::int64_t psi = plan.psi[i];
        std::vector<std::vector<std::uint32_t>> classes(static_cast<std::size_t>(psi));
        for (std::uint32_t p : pending)
            classes[rng.below(static_cast<std::uint64_t>(psi))].push_back(p);
        for (std::int64_t j = 0; j < psi; ++j) {
            const std::int64_t left = slot_budget - consumed;
            if (left <= 0) {
                run.slots_used = consumed;
                return run;
            }
            const std::int64_t block = std::min(plan.class_block_slots, left);
            subset.clear();
            subset_index.clear();
            for (std::uint32_t p : classes[static_cast<std::size_t>(j)]) {
                subset.push_back(requests[p]);
                subset_index.push_back(p);
            }
            const ScheduleRun inner = base.algorithm->run(
                subset, plan.chi, static_cast<double>(m) * plan.chi, block, oracle, rng,
                record_log);
            // the whole instance finishes inside this block only if this class
            // held every still-pending request and the block served them all
            if (inner.all_served() && !subset.empty() && subset.size() == pending.size()) {
                absorb(inner, subset_index, inner.slots_used, true);
                consumed += inner.slots_used;
                drop_served(pending, run);
                run.slots_used = consumed;
                return run;
            }
            absorb(inner, subset_index, block, false);
            consumed += block;
        }
        drop_served(pending, run);
    }

    for (std::int64_t rep = 0; rep < plan.final_reps; ++rep) {
        if (pending.empty()) break;
        const std::int64_t left = slot_budget - consumed;
        if (left <= 0) break;
        const std::int64_t block = std::min(plan.final_block_slots, left);
        subset.clear();
        subset_index.clear();
        for (std::uint32_t p : pending) {
            subset.push_back(requests[p]);
            subset_index.push_back(p);
        }
        const ScheduleRun inner =
            base.algorithm->run(subset, plan.final_measure, count, block, oracle, rng,
                                record_log);
        if (inner.all_served()) {
            absorb(inner, subset_index, inner.slots_used, true);
            consumed += inner.slots_used;
            drop_served(pending, run);
            break;
        }
        absorb(inner, subset_index, block, false);
        consumed += block;
        drop_served(pending, run);
    }
    run.slots_used = consumed;
    return run;
}

}  // namespace

ScheduleRun transform_dense(const SchedulerDescriptor& base, std::span<const Request> requests,
                            double measure, double count, int m, double phi,
                            const SuccessOracle& oracle, RngStream& rng, bool record_log) {
    return transform_dense_impl(base, requests, measure, count, m, phi, oracle, rng, record_log,
                                std::numeric_limits<std::int64_t>::max());
}

TransformedScheduler::TransformedScheduler(SchedulerDescriptor base, int m, double phi)
    : base_(std::move(base)), m_(m), phi_(phi) {
    if (base_.profile.kind != BoundProfile::Kind::multiplicative)
        throw std::invalid_argument("transformation needs a multiplicative base profile");
}

ScheduleRun TransformedScheduler::run(std::span<const Request> requests, double measure_bound,
                                      double count_bound, std::int64_t slot_budget,
                                      const SuccessOracle& oracle, RngStream& rng,
                                      bool record_log) const {
    return transform_dense_impl(base_, requests, measure_bound, count_bound, m_, phi_, oracle,
                                rng, record_log, slot_budget);
}

std::int64_t TransformedScheduler::planned_slots(double measure_bound,
                                                 double count_bound) const {
    return transform_dense_plan(measure_bound, count_bound, m_, phi_, base_.profile)
        .total_slots();
}

// ---------------------------------------------------------------------------
// replay validation

ScheduleValidation validate_schedule(std::span<const Request> requests, const ScheduleRun& run,
                                     const SuccessOracle& oracle) {
    if (!run.log_recorded)
        throw std::invalid_argument("schedule validation needs a recorded attempt log");
    std::unordered_map<std::uint64_t, int> successes;
    SlotFeedback feedback;
    for (const auto& attempts : run.per_slot_attempts) {
        if (attempts.empty()) continue;
        oracle.evaluate(attempts, feedback);
        for (std::size_t k = 0; k < attempts.size(); ++k)
            if (feedback.success[k]) ++successes[attempts[k].request_id];
    }
    for (const auto& [id, n] : successes) {
        if (n > 1) return {false, "request served more than once", id};
    }
    (void)requests;
    for (const auto& o : run.outcomes) {
        if (o.served && successes.find(o.id) == successes.end())
            return {false, "request marked served without a successful attempt", o.id};
    }
    return {};
}

// ---------------------------------------------------------------------------
// descriptors

SchedulerDescriptor make_random_access_descriptor(double cap_constant) {
    SchedulerDescriptor d;
    d.name = "random-access";
    d.profile.kind = BoundProfile::Kind::multiplicative;
    d.profile.f = [cap_constant](double n) { return cap_constant * log2_of(n + 1.0); };
    d.profile.failure_exponent = 1.0;
    d.feedback = FeedbackKind::ack_only;
    d.symmetry = SchedulerSymmetry::symmetric;
    d.algorithm = std::make_shared<RandomAccessScheduler>(cap_constant);
    return d;
}

SchedulerDescriptor make_mac_symmetric_descriptor(double phi, double delta) {
    SchedulerDescriptor d;
    d.name = "mac-symmetric";
    d.profile.kind = BoundProfile::Kind::affine;
    d.profile.f = [delta](double) { return (1.0 + delta) * kE; };
    d.profile.g = [phi, delta](double, double n) {
        const double population = std::max(2.0, std::ceil(n));
        const double s = 2.0 * phi * std::log(population) *
                         (2.0 * kE * kE * (1.0 + delta) * (1.0 + delta) / (delta * delta));
        return std::ceil(s * kE * (phi + 1.0) * std::log(population)) +
               std::ceil((1.0 + delta) * kE);
    };
    d.profile.failure_exponent = phi;
    d.feedback = FeedbackKind::ack_only;
    d.symmetry = SchedulerSymmetry::symmetric;
    d.algorithm = std::make_shared<MacSymmetricScheduler>(phi, delta);
    return d;
}

SchedulerDescriptor make_round_robin_descriptor(int station_count) {
    SchedulerDescriptor d;
    d.name = "round-robin-withholding";
    d.profile.kind = BoundProfile::Kind::affine;
    d.profile.f = [](double) { return 1.0; };
    d.profile.g = [station_count](double, double) { return static_cast<double>(station_count); };
    d.profile.failure_exponent = std::numeric_limits<double>::infinity();
    d.feedback = FeedbackKind::channel_state;
    d.symmetry = SchedulerSymmetry::id_based;
    d.algorithm = std::make_shared<RoundRobinWithholdingScheduler>(station_count);
    return d;
}

SchedulerDescriptor make_single_hop_routing_descriptor() {
    SchedulerDescriptor d;
    d.name = "single-hop-routing";
    d.profile.kind = BoundProfile::Kind::affine;
    d.profile.f = [](double) { return 1.0; };
    d.profile.g = [](double, double) { return 0.0; };
    d.profile.failure_exponent = std::numeric_limits<double>::infinity();
    d.feedback = FeedbackKind::ack_only;
    d.symmetry = SchedulerSymmetry::id_based;
    d.algorithm = std::make_shared<SingleHopRoutingScheduler>();
    return d;
}

SchedulerDescriptor make_transformed_descriptor(const SchedulerDescriptor& base, int m,
                                                double phi) {
    if (base.profile.kind != BoundProfile::Kind::multiplicative)
        throw std::invalid_argument("transformation needs a multiplicative base profile");
    SchedulerDescriptor d;
    d.name = "transformed(" + base.name + ")";
    d.profile.kind = BoundProfile::Kind::affine;
    const double chi = 6.0 * (std::log(static_cast<double>(m)) + 9.0);
    auto base_f = base.profile.f;
    d.profile.f = [base_f, chi](double mm) { return 2.0 * base_f(mm * chi) + 1.0; };
    d.profile.g = [base_f, chi, phi](double mm, double n) {
        const double l2 = log2_of(std::max(n, 2.0));
        const double block = std::ceil(base_f(mm * chi) * chi);
        const double final_block = std::ceil(base_f(n) * 2.0 * phi * chi * l2);
        return std::ceil(l2) * block + (std::ceil(phi) + 1.0) * final_block;
    };
    d.profile.failure_exponent = phi;
    d.feedback = base.feedback;
    d.symmetry = base.symmetry;
    d.algorithm = std::make_shared<TransformedScheduler>(base, m, phi);
    return d;
}

}  // namespace dynsched
