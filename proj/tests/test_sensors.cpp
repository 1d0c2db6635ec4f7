#include <doctest.h>

#include <stdexcept>

#include "capsim/sensors.hpp"

using namespace capsim;

TEST_CASE("humidity_capacitance: default endpoints and midpoint") {
    const HumiditySensorModel m;
    CHECK(humidity_capacitance(m, 0.0) == doctest::Approx(180e-12).epsilon(1e-12));
    CHECK(humidity_capacitance(m, 100.0) == doctest::Approx(500e-12).epsilon(1e-12));
    CHECK(humidity_capacitance(m, 50.0) == doctest::Approx(340e-12).epsilon(1e-12));
}

TEST_CASE("humidity_capacitance: strictly increasing in rh") {
    const HumiditySensorModel m;
    double prev = humidity_capacitance(m, 0.0);
    for (int rh = 1; rh <= 100; ++rh) {
        const double c = humidity_capacitance(m, rh);
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("humidity_capacitance: rh outside [0,100] rejected") {
    const HumiditySensorModel m;
    CHECK_THROWS_AS(humidity_capacitance(m, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(humidity_capacitance(m, 100.1), std::invalid_argument);
}

TEST_CASE("halfbridge_capacitances: rest and +/-1 g values") {
    const AccelHalfBridge m;
    const auto [cp0, cm0] = halfbridge_capacitances(m, 0.0);
    CHECK(cp0 == doctest::Approx(7.048e-12).epsilon(1e-12));
    CHECK(cm0 == doctest::Approx(7.048e-12).epsilon(1e-12));

    const auto [cp, cm] = halfbridge_capacitances(m, 1.0);
    CHECK(cp == doctest::Approx(7.10984e-12).epsilon(1e-12));
    CHECK(cm == doctest::Approx(6.98616e-12).epsilon(1e-12));

    const auto [cp_neg, cm_neg] = halfbridge_capacitances(m, -1.0);
    CHECK(cp_neg == cm);
    CHECK(cm_neg == cp);
}

TEST_CASE("halfbridge_capacitances: sum and difference identities, positivity") {
    const AccelHalfBridge m;
    for (double a : {-100.0, -2.5, 0.0, 0.01, 7.0, 113.0}) {
        const auto [cp, cm] = halfbridge_capacitances(m, a);
        CHECK(cp + cm == doctest::Approx(2.0 * m.c_rest).epsilon(1e-12));
        CHECK(cp - cm == doctest::Approx(2.0 * m.sensitivity * a).epsilon(1e-12));
        CHECK(cp > 0.0);
        CHECK(cm > 0.0);
    }
}

TEST_CASE("halfbridge_capacitances: over-range rejected") {
    const AccelHalfBridge m;
    const double limit_g = m.c_rest / m.sensitivity;
    CHECK_THROWS_AS(halfbridge_capacitances(m, limit_g), std::invalid_argument);
    CHECK_THROWS_AS(halfbridge_capacitances(m, -1.5 * limit_g), std::invalid_argument);
}
