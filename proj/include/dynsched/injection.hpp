#pragma once

// Packet arrival processes: independent per-slot stochastic generators and
// offline adversarial traces bounded per sliding window.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dynsched/core.hpp"
#include "dynsched/rng.hpp"

namespace dynsched {

struct WeightedPath {
    std::shared_ptr<const RoutePath> path;
    double probability;  // in (0, 1]
};

struct PacketGenerator {
    std::vector<WeightedPath> outcomes;

    double total_mass() const;
};

struct StochasticInjectionSpec {
    std::vector<PacketGenerator> generators;

    // Throws if any probability leaves (0,1], a generator's mass exceeds 1
    // (tolerance 1e-9), or a path id falls outside the network.
    void validate(int link_count) const;
};

// One categorical draw per generator for a single slot; at most one packet per
// generator. Streams must come from make_generator_streams so generators stay
// independent.
std::vector<std::shared_ptr<const RoutePath>> sample_injections(
    const StochasticInjectionSpec& spec, std::span<RngStream> generator_streams);

std::vector<RngStream> make_generator_streams(const StochasticInjectionSpec& spec,
                                              std::uint64_t master_seed);

// Expected per-slot request contribution F(e) summed over generators and paths.
std::vector<double> expected_request_vector(const StochasticInjectionSpec& spec,
                                            int link_count);

// ||W * F||_inf, the spec's long-run injection rate.
double stochastic_rate(const StochasticInjectionSpec& spec, const InterferenceMatrix& w);

// Event-stream view of the same per-slot process: per generator the gaps
// between injections are sampled geometrically, which is draw-for-draw
// equivalent in law to one Bernoulli per slot but costs O(#packets).
class InjectionSampler {
public:
    struct Event {
        std::int64_t slot;
        int generator;
        std::shared_ptr<const RoutePath> path;
    };

    InjectionSampler(const StochasticInjectionSpec& spec, std::uint64_t master_seed);

    // Appends all events with slot < slot_exclusive, ordered by slot then
    // generator. Must be called with nondecreasing bounds.
    void events_before(std::int64_t slot_exclusive, std::vector<Event>& out);

private:
    void advance(int g);

    const StochasticInjectionSpec& spec_;
    std::vector<RngStream> streams_;
    std::vector<std::int64_t> next_slot_;
    std::vector<int> next_outcome_;
};

struct Injection {
    std::int64_t slot;
    std::shared_ptr<const RoutePath> path;
};

struct AdversarialTrace {
    std::vector<Injection> injections;  // nondecreasing slots
    std::int64_t window = 1;            // w
    double rate = 0.0;                  // lambda: every w-window obeys ||W*R||_inf <= w*lambda
};

struct WindowCheck {
    bool ok = true;
    std::int64_t first_violating_window = -1;  // start slot of the earliest offender
    double measure = 0.0;
};

WindowCheck validate_window_trace(const AdversarialTrace& trace, const InterferenceMatrix& w);

enum class TracePattern { burst, uniform };

// Builds a trace over [0, horizon_slots) from the candidate paths, packing
// windows as close to w*lambda as integer packets allow. Throws if a single
// candidate already exceeds the window budget.
AdversarialTrace generate_saturating_trace(const InterferenceMatrix& w, std::int64_t window,
                                           double lambda, TracePattern pattern,
                                           std::span<const RoutePath> candidates,
                                           std::int64_t horizon_slots, RngStream& rng);

}  // namespace dynsched
