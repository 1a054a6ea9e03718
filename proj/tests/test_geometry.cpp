// Geometric instances from positions and raw distance tables, metric-defect
// reporting, SINR parameter checks and power assignments.

#include <array>
#include <vector>

#include "doctest.h"
#include "dynsched/geometry.hpp"

using namespace dynsched;

TEST_CASE("positions give euclidean distances") {
    const auto geo = GeometricInstance::from_positions({{0, 0}, {3, 4}, {3, 0}});
    CHECK(geo.point_count() == 3);
    CHECK(geo.distance(0, 1) == doctest::Approx(5.0));
    CHECK(geo.distance(1, 0) == doctest::Approx(5.0));
    CHECK(geo.distance(0, 2) == doctest::Approx(3.0));
    CHECK(geo.distance(1, 1) == 0.0);
    CHECK(geo.validate_metric().empty());
}

TEST_CASE("distance tables are taken verbatim") {
    const auto geo = GeometricInstance::from_distance_table({{0, 2}, {2, 0}});
    CHECK(geo.distance(0, 1) == 2.0);
    CHECK(geo.validate_metric().empty());
}

TEST_CASE("metric defects come back as warnings") {
    SUBCASE("asymmetry") {
        const auto geo = GeometricInstance::from_distance_table({{0, 1}, {2, 0}});
        const auto warnings = geo.validate_metric();
        REQUIRE(!warnings.empty());
        CHECK(warnings[0].kind == MetricWarning::Kind::asymmetric);
    }
    SUBCASE("zero off the diagonal") {
        const auto geo = GeometricInstance::from_distance_table({{0, 0}, {0, 0}});
        const auto warnings = geo.validate_metric();
        REQUIRE(!warnings.empty());
        CHECK(warnings[0].kind == MetricWarning::Kind::zero_off_diagonal);
    }
    SUBCASE("negative distance") {
        const auto geo = GeometricInstance::from_distance_table({{0, -1}, {-1, 0}});
        const auto warnings = geo.validate_metric();
        REQUIRE(!warnings.empty());
        CHECK(warnings[0].kind == MetricWarning::Kind::negative);
    }
    SUBCASE("triangle violation") {
        const auto geo = GeometricInstance::from_distance_table(
            {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
        const auto warnings = geo.validate_metric();
        REQUIRE(!warnings.empty());
        bool saw_triangle = false;
        for (const auto& warning : warnings)
            if (warning.kind == MetricWarning::Kind::triangle) saw_triangle = true;
        CHECK(saw_triangle);
    }
}

TEST_CASE("sinr params validate their ranges") {
    const SinrParams ok{2.0, 1.0, 0.0};
    CHECK_NOTHROW(ok.validate());
    const SinrParams bad_alpha{0.0, 1.0, 0.0};
    CHECK_THROWS_AS(bad_alpha.validate(), std::invalid_argument);
    const SinrParams bad_beta{2.0, 0.0, 0.0};
    CHECK_THROWS_AS(bad_beta.validate(), std::invalid_argument);
    const SinrParams bad_noise{2.0, 1.0, -0.1};
    CHECK_THROWS_AS(bad_noise.validate(), std::invalid_argument);
}

TEST_CASE("uniform power assignment") {
    const PowerAssignment p = PowerAssignment::uniform(3, 2.0);
    CHECK(p.kind == PowerKind::uniform);
    CHECK(p.power == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("link length reads the sender-receiver distance") {
    const NetworkInstance net({"a", "b", "c"}, {Link{0, 2}}, 1);
    const auto geo = GeometricInstance::from_positions({{0, 0}, {9, 9}, {0, 7}});
    CHECK(link_length(net, geo, 0) == doctest::Approx(7.0));
}
