#include "dynsched/injection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynsched {

namespace {

constexpr double kTol = 1e-9;
constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max() / 2;

double path_cost(const InterferenceMatrix& w, const RoutePath& path) {
    RequestVector r;
    r.counts.assign(static_cast<std::size_t>(w.size()), 0);
    for (LinkId hop : path.hops) {
        if (hop < 0 || hop >= w.size())
            throw std::invalid_argument("path hop " + std::to_string(hop) +
                                        " outside the matrix");
        ++r.counts[static_cast<std::size_t>(hop)];
    }
    return interference_measure(w, r);
}

}  // namespace

double PacketGenerator::total_mass() const {
    double mass = 0.0;
    for (const auto& o : outcomes) mass += o.probability;
    return mass;
}

void StochasticInjectionSpec::validate(int link_count) const {
    for (std::size_t g = 0; g < generators.size(); ++g) {
        double mass = 0.0;
        for (const auto& o : generators[g].outcomes) {
            if (!o.path)
                throw std::invalid_argument("generator " + std::to_string(g) +
                                            " has an outcome without a path");
            if (o.path->hops.empty())
                throw std::invalid_argument("generator " + std::to_string(g) +
                                            " has an outcome with an empty path");
            if (!(o.probability > 0.0) || o.probability > 1.0 + kTol)
                throw std::invalid_argument("generator " + std::to_string(g) +
                                            " has a probability outside (0,1]");
            for (LinkId hop : o.path->hops)
                if (hop < 0 || hop >= link_count)
                    throw std::invalid_argument("generator " + std::to_string(g) +
                                                " routes over unknown link " +
                                                std::to_string(hop));
            mass += o.probability;
        }
        if (mass > 1.0 + kTol)
            throw std::invalid_argument("generator " + std::to_string(g) +
                                        " has total probability above 1");
    }
}

std::vector<std::shared_ptr<const RoutePath>> sample_injections(
    const StochasticInjectionSpec& spec, std::span<RngStream> generator_streams) {
    if (generator_streams.size() != spec.generators.size())
        throw std::invalid_argument("one stream per generator required");
    std::vector<std::shared_ptr<const RoutePath>> injected;
    for (std::size_t g = 0; g < spec.generators.size(); ++g) {
        const double u = generator_streams[g].uniform01();
        double cum = 0.0;
        for (const auto& o : spec.generators[g].outcomes) {
            cum += o.probability;
            if (u < cum) {
                injected.push_back(o.path);
                break;
            }
        }
    }
    return injected;
}

std::vector<RngStream> make_generator_streams(const StochasticInjectionSpec& spec,
                                              std::uint64_t master_seed) {
    std::vector<RngStream> streams;
    streams.reserve(spec.generators.size());
    for (std::size_t g = 0; g < spec.generators.size(); ++g)
        streams.emplace_back(master_seed, "inject", static_cast<std::uint64_t>(g));
    return streams;
}

std::vector<double> expected_request_vector(const StochasticInjectionSpec& spec,
                                            int link_count) {
    std::vector<double> f(static_cast<std::size_t>(link_count), 0.0);
    for (const auto& gen : spec.generators)
        for (const auto& o : gen.outcomes)
            for (LinkId hop : o.path->hops) {
                if (hop < 0 || hop >= link_count)
                    throw std::invalid_argument("path hop " + std::to_string(hop) +
                                                " outside 0.." + std::to_string(link_count - 1));
                f[static_cast<std::size_t>(hop)] += o.probability;
            }
    return f;
}

double stochastic_rate(const StochasticInjectionSpec& spec, const InterferenceMatrix& w) {
    const std::vector<double> f = expected_request_vector(spec, w.size());
    return interference_measure(w, f);
}

InjectionSampler::InjectionSampler(const StochasticInjectionSpec& spec,
                                   std::uint64_t master_seed)
    : spec_(spec), streams_(make_generator_streams(spec, master_seed)) {
    const std::size_t n = spec.generators.size();
    next_slot_.assign(n, -1);
    next_outcome_.assign(n, 0);
    for (std::size_t g = 0; g < n; ++g) advance(static_cast<int>(g));
}

void InjectionSampler::advance(int g) {
    const auto& gen = spec_.generators[static_cast<std::size_t>(g)];
    const double mass = gen.total_mass();
    auto& slot = next_slot_[static_cast<std::size_t>(g)];
    if (!(mass > 0.0) || slot >= kNever) {
        slot = kNever;
        return;
    }
    slot += 1 + streams_[static_cast<std::size_t>(g)].geometric_gap(mass);
    if (slot >= kNever || slot < 0) {
        slot = kNever;
        return;
    }
    // outcome conditioned on an injection happening
    int pick = 0;
    if (gen.outcomes.size() > 1) {
        const double u = streams_[static_cast<std::size_t>(g)].uniform01() * mass;
        double cum = 0.0;
        for (std::size_t k = 0; k < gen.outcomes.size(); ++k) {
            cum += gen.outcomes[k].probability;
            pick = static_cast<int>(k);
            if (u < cum) break;
        }
    }
    next_outcome_[static_cast<std::size_t>(g)] = pick;
}

void InjectionSampler::events_before(std::int64_t slot_exclusive, std::vector<Event>& out) {
    for (;;) {
        int best = -1;
        for (std::size_t g = 0; g < next_slot_.size(); ++g)
            if (best < 0 || next_slot_[g] < next_slot_[static_cast<std::size_t>(best)])
                best = static_cast<int>(g);
        if (best < 0 || next_slot_[static_cast<std::size_t>(best)] >= slot_exclusive) return;
        const auto& gen = spec_.generators[static_cast<std::size_t>(best)];
        out.push_back(Event{next_slot_[static_cast<std::size_t>(best)], best,
                            gen.outcomes[static_cast<std::size_t>(
                                             next_outcome_[static_cast<std::size_t>(best)])]
                                .path});
        advance(best);
    }
}

WindowCheck validate_window_trace(const AdversarialTrace& trace, const InterferenceMatrix& w) {
    if (trace.window < 1) throw std::invalid_argument("window length must be at least 1");
    for (std::size_t i = 1; i < trace.injections.size(); ++i)
        if (trace.injections[i].slot < trace.injections[i - 1].slot)
            throw std::invalid_argument("trace injections must be sorted by slot");
    const double budget = trace.rate * static_cast<double>(trace.window) + kTol;
    std::vector<double> load(static_cast<std::size_t>(w.size()), 0.0);
    const auto& inj = trace.injections;
    std::size_t lo = 0, hi = 0;
    // every window's content is contained in the one starting at its first
    // event, so windows anchored at event slots cover the worst case
    for (std::size_t i = 0; i < inj.size(); ++i) {
        if (i > 0 && inj[i].slot == inj[i - 1].slot) continue;
        const std::int64_t start = inj[i].slot;
        while (hi < inj.size() && inj[hi].slot < start + trace.window) {
            for (LinkId hop : inj[hi].path->hops) load[static_cast<std::size_t>(hop)] += 1.0;
            ++hi;
        }
        while (lo < inj.size() && inj[lo].slot < start) {
            for (LinkId hop : inj[lo].path->hops) load[static_cast<std::size_t>(hop)] -= 1.0;
            ++lo;
        }
        const double measure = interference_measure(w, load);
        if (measure > budget) return {false, start, measure};
    }
    return {};
}

AdversarialTrace generate_saturating_trace(const InterferenceMatrix& w, std::int64_t window,
                                           double lambda, TracePattern pattern,
                                           std::span<const RoutePath> candidates,
                                           std::int64_t horizon_slots, RngStream& rng) {
    if (window < 1) throw std::invalid_argument("window length must be at least 1");
    AdversarialTrace trace;
    trace.window = window;
    trace.rate = lambda;
    if (lambda <= 0.0 || horizon_slots <= 0) return trace;
    if (candidates.empty()) throw std::invalid_argument("no candidate paths to inject");

    const double budget = lambda * static_cast<double>(window);
    std::vector<double> cost(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        cost[c] = path_cost(w, candidates[c]);
        if (cost[c] > budget + kTol)
            throw std::invalid_argument("candidate path " + std::to_string(c) +
                                        " alone exceeds the window budget");
    }

    // one block multiset, replicated every window; identical blocks keep every
    // sliding window at exactly the block load
    std::vector<std::size_t> block;
    double used = 0.0;
    for (;;) {
        bool added = false;
        const std::size_t start = rng.below(candidates.size());
        for (std::size_t off = 0; off < candidates.size(); ++off) {
            const std::size_t c = (start + off) % candidates.size();
            if (used + cost[c] <= budget + kTol) {
                block.push_back(c);
                used += cost[c];
                added = true;
                break;
            }
        }
        if (!added) break;
    }
    if (block.empty()) return trace;

    // replicated blocks share one path object per candidate
    std::vector<std::shared_ptr<const RoutePath>> shared(candidates.size());
    for (std::size_t c : block)
        if (!shared[c]) shared[c] = std::make_shared<RoutePath>(candidates[c]);

    const auto count = static_cast<std::int64_t>(block.size());
    for (std::int64_t base = 0; base < horizon_slots; base += window) {
        for (std::int64_t j = 0; j < count; ++j) {
            const std::int64_t offset =
                pattern == TracePattern::burst ? 0 : (j * window) / count;
            const std::int64_t slot = base + offset;
            if (slot >= horizon_slots) break;
            trace.injections.push_back(
                Injection{slot, shared[block[static_cast<std::size_t>(j)]]});
        }
    }
    return trace;
}

}  // namespace dynsched
