#include <doctest.h>

#include <cmath>
#include <random>

#include "capsim/filter.hpp"
#include "capsim/signal.hpp"

using namespace capsim;

namespace {
double db(double mag) { return 20.0 * std::log10(mag); }
}

TEST_CASE("design_lowpass_4th: DC gain is exactly unity") {
    const auto stages = design_lowpass_4th(100.0, 1e6);
    CHECK(std::abs(frequency_response(stages, 0.0)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("design_lowpass_4th: -3.01 dB at cutoff") {
    for (double fc : {10.0, 100.0, 5e3}) {
        const auto stages = design_lowpass_4th(fc, 1e6);
        const double mag_db = db(std::abs(frequency_response(stages, fc)));
        CHECK(mag_db == doctest::Approx(-3.0103).epsilon(0.04));
        CHECK(std::abs(mag_db + 3.01) < 0.1);
    }
}

TEST_CASE("design_lowpass_4th: at least 70 dB down one decade above cutoff") {
    const auto stages = design_lowpass_4th(100.0, 1e6);
    CHECK(db(std::abs(frequency_response(stages, 1000.0))) <= -70.0);
}

TEST_CASE("design_lowpass_4th: all sections stable") {
    for (double fc : {1.0, 100.0, 1e4, 2e5}) {
        const auto stages = design_lowpass_4th(fc, 1e6);
        CHECK(stages.sections.size() == 2);
        for (const auto& s : stages.sections) CHECK(s.stable());
    }
}

TEST_CASE("design_lowpass_4th: cutoff at or above Nyquist rejected") {
    CHECK_THROWS_AS(design_lowpass_4th(5e5, 1e6), std::invalid_argument);
    CHECK_THROWS_AS(design_lowpass_4th(0.0, 1e6), std::invalid_argument);
}

TEST_CASE("filter_apply: zero input gives zero output") {
    const auto stages = design_lowpass_4th(100.0, 1e5);
    const auto out = filter_apply(stages, constant_wave(1e5, 1000, 0.0));
    for (double v : out.samples) CHECK(v == 0.0);
}

TEST_CASE("filter_apply: DC step settles to unity within 0.1% after 10/cutoff") {
    const double fc = 50.0;
    const double fs = 1e5;
    const auto stages = design_lowpass_4th(fc, fs);
    const auto out = filter_apply(stages, constant_wave(fs, std::size_t(20.0 / fc * fs), 1.0));
    const std::size_t settle = static_cast<std::size_t>(10.0 / fc * fs);
    for (std::size_t k = settle; k < out.samples.size(); ++k)
        CHECK(std::abs(out.samples[k] - 1.0) < 1e-3);
}

TEST_CASE("filter_apply: stopband tone attenuated below 5e-3") {
    const double fc = 100.0;
    const double fs = 1e5;
    const auto stages = design_lowpass_4th(fc, fs);
    const auto in = sine(fs, 1 << 16, 1.0, 10.0 * fc);
    const auto out = filter_apply(stages, in);
    // Skip the startup transient before comparing RMS levels.
    Waveform tail{fs, {out.samples.begin() + (1 << 14), out.samples.end()}};
    CHECK(wave_rms(tail) <= 5e-3 * wave_rms(in));
}

TEST_CASE("filter_apply: linear and time-invariant to rounding") {
    const double fs = 1e5;
    const auto stages = design_lowpass_4th(200.0, fs);
    std::mt19937_64 eng(42);
    std::normal_distribution<double> gauss;
    Waveform x{fs, {}, 0.0}, y{fs, {}, 0.0};
    for (int k = 0; k < 4096; ++k) {
        x.samples.push_back(gauss(eng));
        y.samples.push_back(gauss(eng));
    }
    const double a = 1.7, b = -0.4;
    const auto lhs = filter_apply(stages, wave_add(wave_scale(x, a), wave_scale(y, b)));
    const auto rhs = wave_add(wave_scale(filter_apply(stages, x), a),
                              wave_scale(filter_apply(stages, y), b));
    double scale = wave_rms(lhs);
    for (std::size_t k = 0; k < lhs.samples.size(); ++k)
        CHECK(std::abs(lhs.samples[k] - rhs.samples[k]) <= 1e-9 * scale);
}

TEST_CASE("filter_apply: sample-rate mismatch rejected") {
    const auto stages = design_lowpass_4th(100.0, 1e5);
    CHECK_THROWS_AS(filter_apply(stages, constant_wave(2e5, 100, 1.0)), std::invalid_argument);
}
