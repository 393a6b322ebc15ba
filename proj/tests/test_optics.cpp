#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vlcnoma/error.hpp"
#include "vlcnoma/optics.hpp"

using namespace vlcnoma;

namespace {

// Reference values below were computed independently with 30-digit mpmath.
constexpr double kZeta30 = 4.81884167930641800916;
constexpr double kZeta89999 = 0.06326654836766286205;

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

} // namespace

TEST_SUITE("optics") {

TEST_CASE("lambertian order") {
    CHECK(std::abs(lambertian_order(60.0) - 1.0) < 1e-12);
    CHECK(rel_close(lambertian_order(30.0), kZeta30, 1e-12));
    CHECK(rel_close(lambertian_order(89.999), kZeta89999, 1e-9));
    const double narrow = lambertian_order(0.001);
    CHECK(std::isfinite(narrow));
    CHECK(narrow > 1e9);
    CHECK(lambertian_order(20.0) > lambertian_order(40.0));
    CHECK_THROWS_AS(lambertian_order(0.0), InvalidParameter);
    CHECK_THROWS_AS(lambertian_order(90.0), InvalidParameter);
    CHECK_THROWS_AS(lambertian_order(-5.0), InvalidParameter);
}

TEST_CASE("link geometry") {
    const auto l = link_geometry(0.4885, 4.0, 0.5);
    CHECK(rel_close(l.distance, 3.53392589763848896696, 1e-14));
    CHECK(rel_close(l.cos_emission, 0.99039994085298743458, 1e-14));
    CHECK(l.cos_emission == l.cos_incidence);

    const auto below = link_geometry(0.0, 4.0, 1.0);
    CHECK(below.distance == 3.0);
    CHECK(below.cos_incidence == 1.0);

    CHECK_THROWS_AS(link_geometry(1.0, 1.0, 1.0), InvalidGeometry);
    CHECK_THROWS_AS(link_geometry(-1.0, 4.0, 0.5), InvalidGeometry);
}

TEST_CASE("concentrator gain") {
    CHECK(rel_close(concentrator_gain(10.0, 60.0, 1.5), 3.0, 1e-12));
    CHECK(concentrator_gain(61.0, 60.0, 1.5) == 0.0);
    CHECK(rel_close(concentrator_gain(0.0, 90.0, 1.0), 1.0, 1e-12));
    CHECK(rel_close(concentrator_gain(60.0, 60.0, 1.5), 3.0, 1e-12));
}

TEST_CASE("dc gain against independent evaluation") {
    const auto fe = reference_front_end();
    CHECK(rel_close(dc_gain(fe, 0.4885, 4.0, 0.5), 3.00011365470862614687e-6, 1e-12));
    CHECK(rel_close(dc_gain(fe, 3.2880, 4.0, 0.5), 8.79859443593246131686e-7, 1e-12));
    CHECK(rel_close(dc_gain(fe, 3.4670, 4.0, 0.5), 7.94373456801622226183e-7, 1e-12));
    CHECK(rel_close(dc_gain(fe, 0.3030, 4.0, 1.0), 4.15885018273794150445e-6, 1e-12));
}

TEST_CASE("dc gain structure") {
    const auto fe = reference_front_end();

    // On-axis: cos terms are 1, so doubling the distance quarters the gain.
    const double near = dc_gain(fe, 0.0, 2.5, 0.5);
    const double far = dc_gain(fe, 0.0, 4.5, 0.5);
    CHECK(rel_close(near / far, 4.0, 1e-12));

    double previous = dc_gain(fe, 0.0, 4.0, 0.5);
    for (double r = 0.25; r <= 6.0; r += 0.25) {
        const double h = dc_gain(fe, r, 4.0, 0.5);
        CHECK(h < previous);
        CHECK(h >= 0.0);
        previous = h;
    }

    // Beyond the field of view the concentrator blocks the link entirely.
    CHECK(dc_gain(fe, 3.5 * std::tan(61.0 * std::numbers::pi / 180.0), 4.0, 0.5) == 0.0);

    // Same offset and heights give the same gain whichever LED it is.
    CHECK(dc_gain(fe, 1.7, 4.0, 0.5) == dc_gain(fe, 1.7, 4.0, 0.5));
}

TEST_CASE("model gains stay within 25 percent of the published gains") {
    const auto model = gain_matrix(reference_geometry(), reference_front_end());
    const auto quoted = reference_gains();
    CHECK_FALSE(model.overridden);
    CHECK_FALSE(model.diagnostic.has_value());
    CHECK(rel_close(model.gains.h11, quoted.h11, 0.25));
    CHECK(rel_close(model.gains.h21, quoted.h21, 0.25));
    CHECK(rel_close(model.gains.h22, quoted.h22, 0.25));
    CHECK(rel_close(model.gains.h32, quoted.h32, 0.25));
}

TEST_CASE("override passes gains through") {
    const ChannelGains g{1e-6, 2e-7, 3e-7, 4e-6};
    const auto m = gain_matrix(g);
    CHECK(m.overridden);
    CHECK(m.gains.h11 == g.h11);
    CHECK(m.gains.h21 == g.h21);
    CHECK(m.gains.h22 == g.h22);
    CHECK(m.gains.h32 == g.h32);
}

TEST_CASE("ordering diagnostic") {
    CHECK(reference_gains().noma_ordered());
    CHECK_FALSE(reference_gains().ordering_diagnostic().has_value());
    const ChannelGains swapped{1e-7, 2e-7, 1e-7, 1e-6};
    CHECK_FALSE(swapped.noma_ordered());
    REQUIRE(swapped.ordering_diagnostic().has_value());
    CHECK_THROWS_AS(require_noma_ordering(swapped), InvalidParameter);
    CHECK(gain_matrix(swapped).diagnostic.has_value());
}

TEST_CASE("parameter validation") {
    auto fe = reference_front_end();
    fe.semi_angle_deg = 120.0;
    CHECK_THROWS_AS(fe.validate(), InvalidParameter);
    fe = reference_front_end();
    fe.detector_area = -1.0;
    CHECK_THROWS_AS(fe.validate(), InvalidParameter);

    auto geo = reference_geometry();
    geo.receiver_height[0] = 5.0;
    CHECK_THROWS_AS(geo.validate(), InvalidGeometry);
}

}
