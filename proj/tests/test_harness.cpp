#include <doctest.h>

#include <cmath>
#include <random>

#include "capsim/harness.hpp"

using namespace capsim;

namespace {

ChopperConfig fast_cfg() {
    ChopperConfig cfg;
    cfg.sample_rate = 200e3;
    cfg.f_carrier = 10e3;
    cfg.lpf_cutoff = 1e3;
    cfg.duration = 0.025;
    return cfg;
}

}  // namespace

TEST_CASE("stats: constant list, hand arithmetic, short list rejected") {
    const auto c = stats({5e-3, 5e-3, 5e-3});
    CHECK(c.mean == doctest::Approx(5e-3).epsilon(1e-12));
    CHECK(c.std_dev == 0.0);
    CHECK(c.cv == 0.0);

    const auto two = stats({2.0, 4.0});
    CHECK(two.mean == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(two.std_dev == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(two.cv == doctest::Approx(0.4714).epsilon(1e-4));

    CHECK_THROWS_AS(stats({1.0}), std::invalid_argument);
}

TEST_CASE("stats: matches a naive two-pass oracle on random inputs") {
    std::mt19937_64 eng(17);
    std::uniform_real_distribution<double> uni(-3.0, 9.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> xs(257);
        for (double& x : xs) x = uni(eng);
        const auto s = stats(xs);

        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size() - 1);

        CHECK(s.mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(s.std_dev == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
    }
}

TEST_CASE("format_stats_mv: reference report line") {
    SampleStats s;
    s.mean = 58.44e-3;
    s.std_dev = 2.79e-3;
    s.cv = 0.0477;
    CHECK(format_stats_mv(s) == "58.44 mV, 2.79 mV (4.77 %)");
}

TEST_CASE("montecarlo_chopper: degenerate spread collapses to a single value") {
    MonteCarloSpec spec;
    spec.n_samples = 5;
    spec.master_seed = 1;
    const auto s = montecarlo_chopper(fast_cfg(), AccelHalfBridge{}, 1.0, spec);
    CHECK(s.std_dev == 0.0);
    const double single = run_chain(fast_cfg(), AccelHalfBridge{}, 1.0, {}).dc_out;
    CHECK(s.mean == doctest::Approx(single).epsilon(1e-12));
}

TEST_CASE("montecarlo_chopper: CV propagates through the linear chain") {
    MonteCarloSpec spec;
    spec.n_samples = 2000;
    spec.rel_spread_sensitivity = 0.0477;
    spec.master_seed = 99;
    const auto s = montecarlo_chopper(fast_cfg(), AccelHalfBridge{}, 1.0, spec);
    CHECK(std::abs(s.cv - 0.0477) < 0.005);
}

TEST_CASE("montecarlo_chopper: bitwise reproducible under identical spec") {
    MonteCarloSpec spec;
    spec.n_samples = 20;
    spec.rel_spread_sensitivity = 0.02;
    spec.noise = {1e-6, 0.0, 0};
    spec.master_seed = 5;
    const auto a = montecarlo_chopper(fast_cfg(), AccelHalfBridge{}, 1.0, spec);
    const auto b = montecarlo_chopper(fast_cfg(), AccelHalfBridge{}, 1.0, spec);
    CHECK(a.per_sample == b.per_sample);
}

TEST_CASE("compare_interfaces: expected ordering between interfaces holds") {
    CfcConfig cfc_cfg;
    ChopperConfig ch_cfg = fast_cfg();
    CompareSpec spec;
    spec.noise = {1e-6, 10e-6, 12};
    const auto report = compare_interfaces(cfc_cfg, ch_cfg, spec);

    const double cfc_span = report.cfc.capacitance_range_high - report.cfc.capacitance_range_low;
    const double ch_span =
        report.chopper.capacitance_range_high - report.chopper.capacitance_range_low;
    CHECK(cfc_span > ch_span);
    CHECK(report.chopper.smallest_resolvable_dc < report.cfc.smallest_resolvable_dc);
    CHECK(report.chopper.stage_count > report.cfc.stage_count);
    CHECK(report.cfc.linearity_r2 >= 0.999999);
    REQUIRE(report.chopper.noise_robustness_db.has_value());
    CHECK(std::isfinite(*report.chopper.noise_robustness_db));
}

TEST_CASE("log_spaced: endpoints exact, monotone") {
    const auto xs = log_spaced(18e-12, 1e-9, 20);
    REQUIRE(xs.size() == 20);
    CHECK(xs.front() == 18e-12);
    CHECK(xs.back() == 1e-9);
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
}
