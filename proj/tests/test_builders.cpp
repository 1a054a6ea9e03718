// Matrix builders against hand-evaluated affectance values, the conflict and
// routing specials, and the exhaustive inductive-independence checker.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "dynsched/builders.hpp"

using namespace dynsched;

namespace {

// victim link 0 spans (0,0)-(1,0); source link 1 spans (3,0)-(4,0), so the
// interferer's sender sits 2 away from the victim's receiver
struct TwoLinks {
    NetworkInstance net{{"s0", "r0", "s1", "r1"}, {Link{0, 1}, Link{2, 3}}, 1};
    GeometricInstance geo =
        GeometricInstance::from_positions({{0, 0}, {1, 0}, {3, 0}, {4, 0}});
    SinrParams params{2.0, 1.0, 0.0};
    PowerAssignment power = PowerAssignment::uniform(2, 1.0);
};

}  // namespace

TEST_CASE("affectance matches the closed form") {
    TwoLinks s;
    // (beta * 1/2^2) / (1/1^2 - 0) = 0.25
    const Affectance a = affectance(s.net, s.geo, s.params, s.power, 1, 0);
    CHECK(a.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(a.victim_feasible);
    // reversed roles: interferer sender at distance 4 from victim receiver
    const Affectance b = affectance(s.net, s.geo, s.params, s.power, 0, 1);
    CHECK(b.value == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK_THROWS_AS(affectance(s.net, s.geo, s.params, s.power, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("zero margin forces value 1 and an infeasible flag") {
    TwoLinks s;
    s.params.nu = 1.0;  // beta*nu equals the unit received power exactly
    const Affectance a = affectance(s.net, s.geo, s.params, s.power, 1, 0);
    CHECK(a.value == 1.0);
    CHECK(!a.victim_feasible);
}

TEST_CASE("affectance never increases with interferer distance") {
    TwoLinks s;
    double prev = 2.0;
    for (double shift = 0.0; shift < 40.0; shift += 2.5) {
        GeometricInstance geo = GeometricInstance::from_positions(
            {{0, 0}, {1, 0}, {3 + shift, 0}, {4 + shift, 0}});
        const double v = affectance(s.net, geo, s.params, s.power, 1, 0).value;
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("co-located interferer saturates at 1") {
    const NetworkInstance net({"s0", "r0", "s1", "r1"}, {Link{0, 1}, Link{2, 3}}, 1);
    // source sender on top of the victim's receiver
    const auto geo = GeometricInstance::from_positions({{0, 0}, {1, 0}, {1, 0}, {2, 0}});
    const Affectance a = affectance(net, geo, SinrParams{2.0, 1.0, 0.0},
                                    PowerAssignment::uniform(2, 1.0), 1, 0);
    CHECK(a.value == 1.0);
    CHECK(a.victim_feasible);
}

TEST_CASE("linear builder fills pairwise affectances") {
    TwoLinks s;
    const WBuild built = build_w_linear(s.net, s.geo, s.params, s.power);
    CHECK(built.w.at(0, 0) == 1.0);
    CHECK(built.w.at(1, 1) == 1.0);
    CHECK(built.w.at(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(built.w.at(1, 0) == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(built.infeasible_links.empty());
    CHECK(validate_matrix(built.w).ok);
}

TEST_CASE("linear builder scale invariance") {
    TwoLinks s;
    const WBuild base = build_w_linear(s.net, s.geo, s.params, s.power);
    PowerAssignment scaled{{7.5, 7.5}, PowerKind::linear};
    const WBuild big = build_w_linear(s.net, s.geo, s.params, scaled);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(big.w.at(r, c) == doctest::Approx(base.w.at(r, c)).epsilon(1e-9));
}

TEST_CASE("linear builder rejects non-linear powers") {
    TwoLinks s;
    PowerAssignment skew{{1.0, 3.0}, PowerKind::custom};
    CHECK_THROWS_WITH_AS(build_w_linear(s.net, s.geo, s.params, skew),
                         doctest::Contains("not linear"), std::invalid_argument);
}

TEST_CASE("monotone builder zeroes the longer-to-shorter direction") {
    // lengths 1 and 2, sublinear powers p = d (alpha = 2 makes p/d^2 decreasing)
    const NetworkInstance net({"s0", "r0", "s1", "r1"}, {Link{0, 1}, Link{2, 3}}, 1);
    const auto geo = GeometricInstance::from_positions({{0, 0}, {1, 0}, {4, 0}, {6, 0}});
    const SinrParams params{2.0, 1.0, 0.0};
    PowerAssignment power{{1.0, 2.0}, PowerKind::monotone_sublinear};
    const WBuild built = build_w_monotone(net, geo, params, power);
    CHECK(built.w.at(1, 0) == 0.0);
    // the shorter link's row takes the max of the two directed affectances
    const double a01 = affectance(net, geo, params, power, 0, 1).value;
    const double a10 = affectance(net, geo, params, power, 1, 0).value;
    CHECK(built.w.at(0, 1) == doctest::Approx(std::max(a01, a10)).epsilon(1e-12));
    CHECK(validate_matrix(built.w).ok);
}

TEST_CASE("monotone builder enforces its power invariant") {
    const NetworkInstance net({"s0", "r0", "s1", "r1"}, {Link{0, 1}, Link{2, 3}}, 1);
    const auto geo = GeometricInstance::from_positions({{0, 0}, {1, 0}, {4, 0}, {6, 0}});
    // decreasing power with increasing length is not monotone
    PowerAssignment bad{{2.0, 1.0}, PowerKind::monotone_sublinear};
    CHECK_THROWS_WITH_AS(build_w_monotone(net, geo, SinrParams{2.0, 1.0, 0.0}, bad),
                         doctest::Contains("not monotone"), std::invalid_argument);
    // superlinear growth violates the sublinear half
    PowerAssignment super{{1.0, 16.0}, PowerKind::monotone_sublinear};
    CHECK_THROWS_WITH_AS(build_w_monotone(net, geo, SinrParams{2.0, 1.0, 0.0}, super),
                         doctest::Contains("not sublinear"), std::invalid_argument);
}

TEST_CASE("tie-broken pairs keep exactly one nonzero direction") {
    // equal-length links: the lower index counts as shorter
    const NetworkInstance net({"s0", "r0", "s1", "r1"}, {Link{0, 1}, Link{2, 3}}, 1);
    const auto geo = GeometricInstance::from_positions({{0, 0}, {1, 0}, {3, 0}, {4, 0}});
    const WBuild built = build_w_monotone(net, geo, SinrParams{2.0, 1.0, 0.0},
                                          PowerAssignment::uniform(2, 1.0));
    CHECK(built.w.at(0, 1) > 0.0);
    CHECK(built.w.at(1, 0) == 0.0);
}

TEST_CASE("power-control builder matches the closed form") {
    // d(l) = 1, d(s,r') = 2, d(s',r) = 2: entry min{1, 1/4 + 1/4} = 0.5
    const NetworkInstance net({"s", "r", "sp", "rp"}, {Link{0, 1}, Link{2, 3}}, 1);
    const auto geo =
        GeometricInstance::from_positions({{0, 0}, {1, 0}, {3, 0}, {-2, 0}});
    const InterferenceMatrix w = build_w_power_control(net, geo, SinrParams{2.0, 1.0, 0.0});
    CHECK(w.at(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.at(1, 0) == 0.0);
    CHECK(w.at(0, 0) == 1.0);
    CHECK(validate_matrix(w).ok);
}

TEST_CASE("power-control entries cap at 1") {
    const NetworkInstance net({"s", "r", "sp", "rp"}, {Link{0, 1}, Link{2, 3}}, 1);
    // second receiver on top of the first: one ratio term blows up
    const auto geo = GeometricInstance::from_positions({{0, 0}, {1, 0}, {5, 0}, {1, 0}});
    const InterferenceMatrix w = build_w_power_control(net, geo, SinrParams{2.0, 1.0, 0.0});
    CHECK(w.at(0, 1) == 1.0);
}

TEST_CASE("conflict builder respects the rank direction") {
    SUBCASE("path graph, identity order") {
        const ConflictGraph cg(3, {{0, 1}, {1, 2}});
        const InterferenceMatrix w = build_w_conflict(cg);
        CHECK(w.at(0, 1) == 1.0);
        CHECK(w.at(1, 2) == 1.0);
        CHECK(w.at(1, 0) == 0.0);
        CHECK(w.at(2, 1) == 0.0);
        CHECK(w.at(0, 2) == 0.0);
        CHECK(w.nonzero_count() == 5);
    }
    SUBCASE("edgeless graph gives the identity") {
        const InterferenceMatrix w = build_w_conflict(ConflictGraph(3, {}));
        CHECK(w.nonzero_count() == 3);
        for (int r = 0; r < 3; ++r) CHECK(w.at(r, r) == 1.0);
    }
    SUBCASE("complete graph gives ones where rank allows") {
        const ConflictGraph cg(3, {{0, 1}, {0, 2}, {1, 2}}, {2, 1, 0});
        const InterferenceMatrix w = build_w_conflict(cg);
        // pi = (2,1,0): link 2 ranks lowest, so its row covers everyone
        CHECK(w.at(2, 0) == 1.0);
        CHECK(w.at(2, 1) == 1.0);
        CHECK(w.at(1, 0) == 1.0);
        CHECK(w.at(0, 1) == 0.0);
        CHECK(w.at(0, 2) == 0.0);
        CHECK(w.at(1, 2) == 0.0);
    }
    SUBCASE("pi must be a permutation") {
        CHECK_THROWS_AS(ConflictGraph(3, {}, {0, 0, 2}), std::invalid_argument);
    }
}

TEST_CASE("mac and identity builders") {
    const InterferenceMatrix mac = build_w_mac(3);
    const InterferenceMatrix id = build_w_identity(3);
    RequestVector rv;
    rv.counts = {3, 1, 2};
    CHECK(interference_measure(mac, rv) == 6.0);
    CHECK(interference_measure(id, rv) == 3.0);
}

TEST_CASE("node-constraint builder links shared endpoints") {
    SUBCASE("disjoint links give the identity") {
        const NetworkInstance net({"a", "b", "c", "d"}, {Link{0, 1}, Link{2, 3}}, 1);
        CHECK(build_w_node_constraint(net).nonzero_count() == 2);
    }
    SUBCASE("shared sender conflicts in index order") {
        const NetworkInstance net({"a", "b", "c"}, {Link{0, 1}, Link{0, 2}}, 1);
        const InterferenceMatrix w = build_w_node_constraint(net);
        CHECK(w.at(0, 1) == 1.0);
        CHECK(w.at(1, 0) == 0.0);
    }
    SUBCASE("a star conflicts everywhere") {
        const NetworkInstance net({"hub", "a", "b", "c"},
                                  {Link{0, 1}, Link{2, 0}, Link{0, 3}}, 1);
        const InterferenceMatrix w = build_w_node_constraint(net);
        CHECK(w.at(0, 1) == 1.0);
        CHECK(w.at(0, 2) == 1.0);
        CHECK(w.at(1, 2) == 1.0);
        CHECK(w.nonzero_count() == 6);
    }
}

TEST_CASE("inductive independence checker") {
    SUBCASE("edgeless graph is 1-independent") {
        const auto r = check_inductive_independence(ConflictGraph(4, {}, {}, 1));
        CHECK(r.status == IndependenceCheck::Status::ok);
    }
    SUBCASE("triangle is 1-independent under any order") {
        const auto r =
            check_inductive_independence(ConflictGraph(3, {{0, 1}, {0, 2}, {1, 2}}, {}, 1));
        CHECK(r.status == IndependenceCheck::Status::ok);
    }
    SUBCASE("star with the center ranked last is a counterexample at rho 2") {
        const ConflictGraph cg(4, {{3, 0}, {3, 1}, {3, 2}}, {0, 1, 2, 3}, 2);
        const auto r = check_inductive_independence(cg);
        REQUIRE(r.status == IndependenceCheck::Status::violation);
        CHECK(r.vertex == 3);
        CHECK(r.witness.size() == 3);
    }
    SUBCASE("star passes at rho 3") {
        const ConflictGraph cg(4, {{3, 0}, {3, 1}, {3, 2}}, {0, 1, 2, 3}, 3);
        CHECK(check_inductive_independence(cg).status == IndependenceCheck::Status::ok);
    }
    SUBCASE("oversized instances are refused, not approximated") {
        const ConflictGraph cg(25, {{0, 1}});
        CHECK(check_inductive_independence(cg).status ==
              IndependenceCheck::Status::too_large);
        CHECK(check_inductive_independence(cg, 30).status ==
              IndependenceCheck::Status::ok);
    }
}
