#include <doctest.h>

#include <cmath>

#include "capsim/cfc.hpp"
#include "capsim/harness.hpp"

using namespace capsim;

namespace {

CfcConfig reference_cfg() {
    CfcConfig cfg;
    cfg.v_supply = 5.0;
    cfg.charge_current = 40e-6;
    cfg.c_parallel = 0.0;
    return cfg;
}

}  // namespace

TEST_CASE("cycle_time_analytic: zero capacitance gives zero cycle time") {
    CHECK(cycle_time_analytic(reference_cfg(), 0.0) == 0.0);
}

TEST_CASE("cycle_time_analytic: 120 pF at 5 V / 40 uA gives 10 us") {
    CHECK(cycle_time_analytic(reference_cfg(), 120e-12) == doctest::Approx(10e-6).epsilon(1e-12));
}

TEST_CASE("cycle_time_analytic: linear in total capacitance") {
    const auto cfg = reference_cfg();
    CHECK(cycle_time_analytic(cfg, 240e-12) ==
          doctest::Approx(2.0 * cycle_time_analytic(cfg, 120e-12)).epsilon(1e-12));
    CfcConfig shifted = cfg;
    shifted.c_parallel = 33e-12;
    const double shift = 2.0 * cfg.v_supply / (3.0 * cfg.charge_current) * 33e-12;
    CHECK(cycle_time_analytic(shifted, 120e-12) ==
          doctest::Approx(cycle_time_analytic(cfg, 120e-12) + shift).epsilon(1e-12));
    CHECK_THROWS_AS(cycle_time_analytic(cfg, -1e-12), std::invalid_argument);
}

TEST_CASE("simulate_transient: zero-noise mean matches analytic within 0.1%") {
    const auto cfg = reference_cfg();
    const double t = cycle_time_analytic(cfg, 120e-12);
    const auto result = simulate_transient(cfg, 120e-12, {}, t / 1000.0, 20);
    double sum = 0.0;
    for (double ct : result.cycle_times) sum += ct;
    CHECK(sum / result.cycle_times.size() == doctest::Approx(t).epsilon(1e-3));
}

TEST_CASE("simulate_transient: single zero-noise cycle matches analytic") {
    const auto cfg = reference_cfg();
    const double t = cycle_time_analytic(cfg, 330e-12);
    const auto result = simulate_transient(cfg, 330e-12, {}, t / 500.0, 1);
    REQUIRE(result.cycle_times.size() == 1);
    CHECK(result.cycle_times[0] == doctest::Approx(t).epsilon(1e-3));
}

TEST_CASE("simulate_transient: duty symmetry with symmetric currents") {
    const auto cfg = reference_cfg();
    const double t = cycle_time_analytic(cfg, 100e-12);
    const auto result = simulate_transient(cfg, 100e-12, {}, t / 1000.0, 10);
    REQUIRE(result.charge_times.size() >= result.cycle_times.size());
    for (std::size_t i = 0; i < result.cycle_times.size(); ++i) {
        CHECK(result.charge_times[i] ==
              doctest::Approx(result.discharge_times[i]).epsilon(1e-3));
    }
}

TEST_CASE("simulate_transient: threshold noise keeps the mean, adds jitter") {
    const auto cfg = reference_cfg();
    const double t = cycle_time_analytic(cfg, 120e-12);
    const double dt = t / 1000.0;
    // Per-sample comparator-referred sigma of 0.1% of the supply.
    NoiseSpec noise;
    noise.white_density = 0.001 * cfg.v_supply / std::sqrt(0.5 / dt);
    noise.seed = 11;
    const auto result = simulate_transient(cfg, 120e-12, noise, dt, 1000);
    const auto s = stats(result.cycle_times);
    CHECK(s.mean == doctest::Approx(t).epsilon(5e-3));
    CHECK(s.std_dev > 0.0);
}

TEST_CASE("simulate_transient: coarse dt rejected") {
    const auto cfg = reference_cfg();
    const double t = cycle_time_analytic(cfg, 120e-12);
    CHECK_THROWS_AS(simulate_transient(cfg, 120e-12, {}, t / 100.0, 5), std::invalid_argument);
}

TEST_CASE("simulate_transient: extreme noise chatters but still terminates") {
    // Zero-mean noise many times the supply makes the comparator chatter;
    // the simulation must still return the requested number of (garbage)
    // cycles instead of hanging. The 10x-cycle-time stall guard covers the
    // complementary failure mode of a persistent offset.
    const auto cfg = reference_cfg();
    const double t = cycle_time_analytic(cfg, 120e-12);
    const double dt = t / 1000.0;
    NoiseSpec noise;
    noise.white_density = 10.0 * cfg.v_supply / std::sqrt(0.5 / dt);
    noise.seed = 3;
    const auto result = simulate_transient(cfg, 120e-12, noise, dt, 5);
    CHECK(result.cycle_times.size() == 5);
}

TEST_CASE("count_cycles: exact division, quantization bound, degenerate gate") {
    // 100 kHz for 10 ms: exactly 1000 cycles.
    std::vector<double> exact(1500, 1e-5);
    auto [count, freq] = count_cycles(exact, 10e-3);
    CHECK(count == 1000);
    CHECK(freq == doctest::Approx(100e3).epsilon(1e-12));

    // 100.05 kHz: count within one LSB of truth.
    std::vector<double> off(1500, 1.0 / 100.05e3);
    auto [count2, freq2] = count_cycles(off, 10e-3);
    CHECK((count2 == 1000 || count2 == 1001));
    CHECK(std::abs(freq2 - 100.05e3) <= 100.0);

    // Gate shorter than one cycle.
    std::vector<double> slow{1.0};
    auto [count3, freq3] = count_cycles(slow, 0.5);
    CHECK(count3 == 0);
    CHECK(freq3 == 0.0);

    CHECK_THROWS_AS(count_cycles({}, 1.0), std::invalid_argument);
}

TEST_CASE("count_cycles: counter bound against mean cycle time") {
    const std::vector<double> gates = {1e-3, 3.7e-3, 10e-3};
    for (double gate : gates) {
        std::vector<double> cycles(4000, 1.0 / 123.456e3);
        auto [count, freq] = count_cycles(cycles, gate);
        (void)count;
        CHECK(std::abs(freq - 123.456e3) <= 1.0 / gate);
    }
}

TEST_CASE("sweep_transfer: linearity and slope over the 18 pF - 1 nF range") {
    const auto cfg = reference_cfg();
    const auto cs = log_spaced(18e-12, 1e-9, 20);
    const auto rows = sweep_transfer(cfg, cs);
    REQUIRE(rows.size() == 20);
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(r.capacitance);
        y.push_back(r.cycle_time);
    }
    const auto fit = linear_fit(x, y);
    CHECK(fit.r_squared >= 0.999999);
    const double expected = 2.0 * cfg.v_supply / (3.0 * cfg.charge_current);
    CHECK(fit.slope == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("sweep_transfer: single point, order preserved") {
    const auto rows = sweep_transfer(reference_cfg(), {470e-12});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].capacitance == 470e-12);
    const auto multi = sweep_transfer(reference_cfg(), {1e-9, 18e-12, 100e-12});
    CHECK(multi[0].capacitance == 1e-9);
    CHECK(multi[1].capacitance == 18e-12);
}
