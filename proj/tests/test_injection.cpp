// Arrival processes: stochastic generator specs, the event-stream sampler and
// windowed adversarial traces.

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "doctest.h"
#include "dynsched/builders.hpp"
#include "dynsched/injection.hpp"

using namespace dynsched;

namespace {

std::shared_ptr<const RoutePath> path_of(std::vector<LinkId> hops) {
    return std::make_shared<RoutePath>(RoutePath{std::move(hops)});
}

StochasticInjectionSpec two_generator_spec() {
    StochasticInjectionSpec spec;
    PacketGenerator g0;
    g0.outcomes.push_back(WeightedPath{path_of({0, 1}), 0.5});
    g0.outcomes.push_back(WeightedPath{path_of({0}), 0.25});
    PacketGenerator g1;
    g1.outcomes.push_back(WeightedPath{path_of({1}), 0.75});
    spec.generators = {g0, g1};
    return spec;
}

}  // namespace

TEST_CASE("spec validation points at the offending generator") {
    StochasticInjectionSpec spec = two_generator_spec();
    CHECK_NOTHROW(spec.validate(2));
    SUBCASE("unknown link") {
        CHECK_THROWS_WITH_AS(spec.validate(1), doctest::Contains("generator 0"),
                             std::invalid_argument);
    }
    SUBCASE("mass above one") {
        spec.generators[1].outcomes.push_back(WeightedPath{path_of({0}), 0.5});
        CHECK_THROWS_WITH_AS(spec.validate(2), doctest::Contains("generator 1"),
                             std::invalid_argument);
    }
    SUBCASE("bad probability") {
        spec.generators[0].outcomes[0].probability = 0.0;
        CHECK_THROWS_WITH_AS(spec.validate(2), doctest::Contains("probability"),
                             std::invalid_argument);
    }
    SUBCASE("empty path") {
        spec.generators[0].outcomes[0].path = path_of({});
        CHECK_THROWS_AS(spec.validate(2), std::invalid_argument);
    }
}

TEST_CASE("expected request vector and rate") {
    const StochasticInjectionSpec spec = two_generator_spec();
    const std::vector<double> f = expected_request_vector(spec, 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == doctest::Approx(0.75));   // 0.5 + 0.25 on link 0
    CHECK(f[1] == doctest::Approx(1.25));   // 0.5 + 0.75 on link 1
    CHECK(stochastic_rate(spec, build_w_identity(2)) == doctest::Approx(1.25));
    CHECK(stochastic_rate(spec, build_w_mac(2)) == doctest::Approx(2.0));
    CHECK(spec.generators[0].total_mass() == doctest::Approx(0.75));
}

TEST_CASE("per-slot sampling matches the outcome probabilities") {
    const StochasticInjectionSpec spec = two_generator_spec();
    auto streams = make_generator_streams(spec, 90210);
    REQUIRE(streams.size() == 2);
    const int slots = 20000;
    int long_path = 0, short_path = 0, second = 0;
    for (int t = 0; t < slots; ++t) {
        const auto paths = sample_injections(spec, streams);
        for (const auto& p : paths) {
            if (p->hops.size() == 2) ++long_path;
            else if (p->hops[0] == 0) ++short_path;
            else ++second;
        }
    }
    const auto near = [&](int got, double p) {
        const double se = std::sqrt(p * (1.0 - p) * slots);
        return std::abs(got - p * slots) <= 4.0 * se;
    };
    CHECK(near(long_path, 0.5));
    CHECK(near(short_path, 0.25));
    CHECK(near(second, 0.75));
}

TEST_CASE("sampler needs one stream per generator") {
    const StochasticInjectionSpec spec = two_generator_spec();
    std::vector<RngStream> streams(1);
    CHECK_THROWS_AS(sample_injections(spec, streams), std::invalid_argument);
}

TEST_CASE("event sampler agrees with per-slot sampling in law") {
    const StochasticInjectionSpec spec = two_generator_spec();
    InjectionSampler sampler(spec, 90210);
    std::vector<InjectionSampler::Event> events;
    sampler.events_before(20000, events);
    // nondecreasing slots, and matching totals against the bernoulli run above
    for (std::size_t i = 1; i < events.size(); ++i)
        CHECK(events[i - 1].slot <= events[i].slot);
    int long_path = 0;
    for (const auto& e : events)
        if (e.path->hops.size() == 2) ++long_path;
    const double se = std::sqrt(0.5 * 0.5 * 20000);
    CHECK(std::abs(long_path - 10000.0) <= 4.0 * se);
    // a second call with a larger bound only appends
    const std::size_t before = events.size();
    sampler.events_before(21000, events);
    CHECK(events.size() >= before);
    for (std::size_t i = before; i < events.size(); ++i) CHECK(events[i].slot >= 20000);
}

TEST_CASE("window validation finds the earliest offender") {
    const InterferenceMatrix w = build_w_identity(2);
    AdversarialTrace trace;
    trace.window = 2;
    trace.rate = 0.5;  // budget 1 per 2-slot window
    const auto p0 = path_of({0});
    SUBCASE("a clean trace passes") {
        trace.injections = {{0, p0}, {2, p0}, {4, p0}};
        const WindowCheck check = validate_window_trace(trace, w);
        CHECK(check.ok);
    }
    SUBCASE("two in one window fail") {
        trace.injections = {{0, p0}, {2, p0}, {3, p0}, {6, p0}};
        const WindowCheck check = validate_window_trace(trace, w);
        CHECK(!check.ok);
        CHECK(check.first_violating_window == 2);
        CHECK(check.measure == doctest::Approx(2.0));
    }
    SUBCASE("unsorted traces are rejected") {
        trace.injections = {{4, p0}, {0, p0}};
        CHECK_THROWS_AS(validate_window_trace(trace, w), std::invalid_argument);
    }
    SUBCASE("multi-hop paths count every hop") {
        AdversarialTrace mh;
        mh.window = 1;
        mh.rate = 1.0;
        mh.injections = {{0, path_of({0, 1})}};
        CHECK(validate_window_trace(mh, build_w_identity(2)).ok);
        // under the all-ones matrix both hops land in one row sum
        const WindowCheck check = validate_window_trace(mh, build_w_mac(2));
        CHECK(!check.ok);
        CHECK(check.measure == doctest::Approx(2.0));
    }
}

TEST_CASE("saturating traces validate by construction") {
    const InterferenceMatrix w = build_w_mac(4);
    std::vector<RoutePath> candidates;
    for (int e = 0; e < 4; ++e) candidates.push_back(RoutePath{{e}});
    for (const TracePattern pattern : {TracePattern::burst, TracePattern::uniform}) {
        RngStream rng(515, "trace");
        const AdversarialTrace trace =
            generate_saturating_trace(w, 10, 0.5, pattern, candidates, 1000, rng);
        CHECK(validate_window_trace(trace, w).ok);
        // integral budget: exactly 5 unit packets per 10-slot window
        CHECK(trace.injections.size() == 500);
        for (const auto& inj : trace.injections) {
            CHECK(inj.slot >= 0);
            CHECK(inj.slot < 1000);
        }
    }
}

TEST_CASE("burst and uniform patterns shape the offsets") {
    const InterferenceMatrix w = build_w_mac(2);
    const std::vector<RoutePath> candidates{RoutePath{{0}}, RoutePath{{1}}};
    RngStream rng_a(6, "trace");
    const AdversarialTrace burst =
        generate_saturating_trace(w, 10, 0.5, TracePattern::burst, candidates, 100, rng_a);
    for (const auto& inj : burst.injections) CHECK(inj.slot % 10 == 0);
    RngStream rng_b(6, "trace");
    const AdversarialTrace uniform = generate_saturating_trace(
        w, 10, 0.5, TracePattern::uniform, candidates, 100, rng_b);
    bool off_boundary = false;
    for (const auto& inj : uniform.injections)
        if (inj.slot % 10 != 0) off_boundary = true;
    CHECK(off_boundary);
    CHECK(validate_window_trace(uniform, w).ok);
}

TEST_CASE("oversized candidates are refused") {
    const InterferenceMatrix w = build_w_mac(2);
    // a 2-hop path costs 2 against a window budget of 1
    const std::vector<RoutePath> candidates{RoutePath{{0, 1}}};
    RngStream rng(3, "trace");
    CHECK_THROWS_WITH_AS(
        generate_saturating_trace(w, 2, 0.5, TracePattern::burst, candidates, 100, rng),
        doctest::Contains("alone exceeds"), std::invalid_argument);
}

TEST_CASE("zero rate or horizon give an empty trace") {
    const InterferenceMatrix w = build_w_mac(2);
    const std::vector<RoutePath> candidates{RoutePath{{0}}};
    RngStream rng(3, "trace");
    CHECK(generate_saturating_trace(w, 5, 0.0, TracePattern::burst, candidates, 100, rng)
              .injections.empty());
    CHECK(generate_saturating_trace(w, 5, 0.5, TracePattern::burst, candidates, 0, rng)
              .injections.empty());
}
