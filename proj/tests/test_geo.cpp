#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dragoon/geo.hpp"
#include "oracles.hpp"

using namespace dragoon;

TEST_CASE("orthodromic distance basics") {
    const GeoPoint munich(48.1374, 11.5755);
    CHECK(orthodromic_distance(munich, munich) == 0.0);

    // Antipodal points: half the circumference.
    CHECK(orthodromic_distance(GeoPoint(0, 0), GeoPoint(0, 180)) ==
          doctest::Approx(20015.1).epsilon(0.1 / 20015.1));

    // Frozen from the independent atan2-form oracle.
    const GeoPoint london(51.5074, -0.1278), paris(48.8566, 2.3522);
    const double d = orthodromic_distance(london, paris);
    CHECK(d == doctest::Approx(343.556).epsilon(1e-4));
    CHECK(d == doctest::Approx(testing::reference_great_circle(london, paris)).epsilon(1e-9));
}

TEST_CASE("orthodromic distance is symmetric, non-negative, zero iff equal") {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> lat(-89.0, 89.0), lon(-180.0, 180.0);
    for (int i = 0; i < 500; ++i) {
        const GeoPoint a(lat(rng), lon(rng)), b(lat(rng), lon(rng));
        const double ab = orthodromic_distance(a, b);
        CHECK(ab >= 0.0);
        CHECK(ab == orthodromic_distance(b, a));
        if (!(a == b)) CHECK(ab > 0.0);
        CHECK(ab == doctest::Approx(testing::reference_great_circle(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("coordinate validation and longitude normalization") {
    CHECK_THROWS_AS(GeoPoint(91.0, 0.0), InvalidCoordinates);
    CHECK_THROWS_AS(GeoPoint(0.0, std::nan("")), InvalidCoordinates);
    CHECK(GeoPoint(0.0, 180.0).lon == -180.0);
    CHECK(GeoPoint(0.0, 190.0).lon == doctest::Approx(-170.0));
    CHECK(GeoPoint(0.0, -540.0).lon == -180.0);
}

TEST_CASE("projection maps the origin to (0,0) and preserves radial distance") {
    const Projection plane{GeoPoint(48.0, 11.0)};
    CHECK(project(plane, plane.origin).norm() == 0.0);

    std::mt19937 rng(4041);
    std::uniform_real_distribution<double> bearing(0.0, 360.0), dist(0.1, 4999.0);
    for (int i = 0; i < 500; ++i) {
        const double d = dist(rng);
        const GeoPoint g = destination_point(plane.origin, bearing(rng), d);
        const PlanarPoint p = project(plane, g);
        CHECK(p.norm() == doctest::Approx(orthodromic_distance(plane.origin, g))
                              .epsilon(1e-9));  // azimuthal-equidistant property
    }
}

TEST_CASE("projection example: 100 km due north") {
    // Destination-point formula as the oracle for the expected planar spot.
    const Projection plane{GeoPoint(48.0, 11.0)};
    const GeoPoint north = destination_point(plane.origin, 0.0, 100.0);
    const PlanarPoint p = project(plane, north);
    CHECK(std::abs(p.x() - 0.0) < 0.1);
    CHECK(std::abs(p.y() - 100.0) < 0.1);
}

TEST_CASE("projection round trip") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> lat(-60.0, 75.0), lon(-180.0, 180.0);
    std::uniform_real_distribution<double> bearing(0.0, 360.0), dist(0.0, 4999.0);
    for (int i = 0; i < 500; ++i) {
        const Projection plane{GeoPoint(lat(rng), lon(rng))};
        const GeoPoint g = destination_point(plane.origin, bearing(rng), dist(rng));
        const GeoPoint back = unproject(plane, project(plane, g));
        CHECK(std::abs(back.lat - g.lat) < 1e-9);
        CHECK(std::abs(back.lon - g.lon) < 1e-9);
    }
}

TEST_CASE("projection range errors") {
    const Projection plane{GeoPoint(48.0, 11.0)};
    CHECK_THROWS_AS(project(plane, GeoPoint(-40.0, 11.0)), OutOfProjectionRange);
    CHECK_THROWS_AS(unproject(plane, PlanarPoint(5000.0, 0.0)), OutOfProjectionRange);
    CHECK_NOTHROW(unproject(plane, PlanarPoint(4999.0, 0.0)));
}

TEST_CASE("planar distances distort by less than 1.5% within 1000 km of the origin") {
    std::mt19937 rng(505);
    std::uniform_real_distribution<double> bearing(0.0, 360.0), dist(0.0, 1000.0);
    const Projection plane{GeoPoint(50.0, 8.0)};
    for (int i = 0; i < 2000; ++i) {
        const GeoPoint a = destination_point(plane.origin, bearing(rng), dist(rng));
        const GeoPoint b = destination_point(plane.origin, bearing(rng), dist(rng));
        const double ortho = orthodromic_distance(a, b);
        if (ortho < 1.0) continue;
        const double planar = (project(plane, a) - project(plane, b)).norm();
        CHECK(std::abs(planar - ortho) / ortho < 0.015);
    }
}

TEST_CASE("circle intersection: symmetric 3-4-5 configuration") {
    const auto result = intersect_circles(Circle{{0, 0}, 5}, Circle{{8, 0}, 5});
    const auto* two = std::get_if<TwoPoints>(&result);
    REQUIRE(two != nullptr);
    // first = left of the center1->center2 axis = +y here.
    CHECK(two->first.x() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(two->first.y() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(two->second.x() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(two->second.y() == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("circle intersection: external tangency") {
    const auto result = intersect_circles(Circle{{0, 0}, 5}, Circle{{10, 0}, 5});
    const auto* one = std::get_if<OnePoint>(&result);
    REQUIRE(one != nullptr);
    CHECK(one->point.x() == doctest::Approx(5.0));
    CHECK(one->point.y() == doctest::Approx(0.0));
    CHECK_FALSE(one->shrunk);
}

TEST_CASE("circle intersection: disjoint circles yield the gap midpoint") {
    // Nearest points at x=2 and x=7, so the midpoint sits at (4.5, 0).
    const auto result = intersect_circles(Circle{{0, 0}, 2}, Circle{{10, 0}, 3});
    const auto* gap = std::get_if<DisjointOutside>(&result);
    REQUIRE(gap != nullptr);
    CHECK(gap->gap_midpoint.x() == doctest::Approx(4.5));
    CHECK(gap->gap_midpoint.y() == doctest::Approx(0.0));
}

TEST_CASE("circle intersection: containment") {
    const auto result = intersect_circles(Circle{{0, 0}, 10}, Circle{{1, 0}, 2});
    const auto* contained = std::get_if<Contained>(&result);
    REQUIRE(contained != nullptr);
    CHECK(contained->inner == 1);  // second circle has the smaller radius
}

TEST_CASE("circle intersection: coincident centers are an error") {
    CHECK_THROWS_AS(intersect_circles(Circle{{0, 0}, 2}, Circle{{0, 0}, 3}), CoincidentCenters);
    CHECK_THROWS_AS(intersect_circles(Circle{{0, 0}, 2}, Circle{{0, 1e-10}, 3}),
                    CoincidentCenters);
}

TEST_CASE("circle intersection: shrink-to-tangent policy") {
    // Disjoint: larger radius shrinks until the circles touch on the smaller
    // circle's boundary.
    auto result = intersect_circles(Circle{{0, 0}, 2}, Circle{{10, 0}, 3},
                                    RadiusPolicy::shrink_to_tangent);
    auto* one = std::get_if<OnePoint>(&result);
    REQUIRE(one != nullptr);
    CHECK(one->shrunk);
    CHECK(one->point.x() == doctest::Approx(2.0));
    CHECK(one->point.y() == doctest::Approx(0.0));

    // Contained: larger radius shrinks to internal tangency beyond the
    // smaller circle.
    result = intersect_circles(Circle{{0, 0}, 10}, Circle{{1, 0}, 2},
                               RadiusPolicy::shrink_to_tangent);
    one = std::get_if<OnePoint>(&result);
    REQUIRE(one != nullptr);
    CHECK(one->shrunk);
    CHECK(one->point.x() == doctest::Approx(3.0));
    CHECK(one->point.y() == doctest::Approx(0.0));
}

TEST_CASE("radical-line and substitution-quadratic routes agree") {
    std::mt19937 rng(99);
    int compared = 0;
    while (compared < 2000) {
        const auto [c1, c2] = testing::random_circle_pair(rng);
        if (std::abs(c1.center.x() - c2.center.x()) < 0.1) continue;  // quadratic route needs c != 0
        const auto result = intersect_circles(c1, c2);
        const auto* two = std::get_if<TwoPoints>(&result);
        if (two == nullptr) continue;
        PlanarPoint roots[2];
        REQUIRE(testing::quadratic_route(c1, c2, roots));
        // Match point sets irrespective of ordering.
        const double direct = std::max((roots[0] - two->first).norm(),
                                       (roots[1] - two->second).norm());
        const double swapped = std::max((roots[0] - two->second).norm(),
                                        (roots[1] - two->first).norm());
        CHECK(std::min(direct, swapped) < 1e-6);
        ++compared;
    }
}

TEST_CASE("intersection points satisfy both circle equations") {
    std::mt19937 rng(123);
    for (int i = 0; i < 2000; ++i) {
        const auto [c1, c2] = testing::random_circle_pair(rng);
        const auto result = intersect_circles(c1, c2);
        const auto check_point = [&](const PlanarPoint& p) {
            const double res1 = std::abs((p - c1.center).norm() - c1.radius_km);
            const double res2 = std::abs((p - c2.center).norm() - c2.radius_km);
            CHECK(res1 / c1.radius_km < 1e-6);
            CHECK(res2 / c2.radius_km < 1e-6);
        };
        if (const auto* two = std::get_if<TwoPoints>(&result)) {
            check_point(two->first);
            check_point(two->second);
        } else if (const auto* one = std::get_if<OnePoint>(&result)) {
            check_point(one->point);
        }

        // Symmetry in the arguments, up to point ordering.
        const auto swapped = intersect_circles(c2, c1);
        CHECK(result.index() != std::variant_npos);
        if (const auto* two = std::get_if<TwoPoints>(&result)) {
            const auto* two_swapped = std::get_if<TwoPoints>(&swapped);
            REQUIRE(two_swapped != nullptr);
            const double direct = std::max((two->first - two_swapped->first).norm(),
                                           (two->second - two_swapped->second).norm());
            const double crossed = std::max((two->first - two_swapped->second).norm(),
                                            (two->second - two_swapped->first).norm());
            CHECK(std::min(direct, crossed) < 1e-9);
        } else {
            CHECK(swapped.index() != std::variant_npos);
        }
    }
}

TEST_CASE("intersection agrees with the dense sampling oracle") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 2000; ++i) {
        const auto [c1, c2] = testing::random_circle_pair(rng);
        const auto oracle = testing::sample_circle_intersection(c1, c2);
        const auto result = intersect_circles(c1, c2);
        switch (oracle.kind) {
            case testing::CircleOracleResult::two_points: {
                const auto* two = std::get_if<TwoPoints>(&result);
                REQUIRE(two != nullptr);
                REQUIRE(oracle.points.size() == 2);
                for (const PlanarPoint& expected : oracle.points) {
                    const double nearest = std::min((expected - two->first).norm(),
                                                    (expected - two->second).norm());
                    CHECK(nearest < 1e-3);
                }
                break;
            }
            case testing::CircleOracleResult::disjoint:
                CHECK(std::holds_alternative<DisjointOutside>(result));
                break;
            case testing::CircleOracleResult::contained: {
                const auto* contained = std::get_if<Contained>(&result);
                REQUIRE(contained != nullptr);
                CHECK(contained->inner == oracle.inner);
                break;
            }
        }
    }
}

TEST_CASE("geodesic midpoint sits halfway") {
    const GeoPoint a(48.0, 11.0), b(52.0, 4.0);
    const GeoPoint mid = geodesic_midpoint(a, b);
    CHECK(orthodromic_distance(a, mid) ==
          doctest::Approx(orthodromic_distance(b, mid)).epsilon(1e-9));
    CHECK(orthodromic_distance(a, mid) + orthodromic_distance(mid, b) ==
          doctest::Approx(orthodromic_distance(a, b)).epsilon(1e-9));
}
