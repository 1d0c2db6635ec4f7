#include "capsim/filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capsim {

FilterStages design_lowpass_4th(double cutoff, double sample_rate) {
    if (sample_rate <= 0.0) throw std::invalid_argument("design_lowpass_4th: sample_rate must be > 0");
    if (cutoff <= 0.0 || cutoff >= sample_rate / 2.0)
        throw std::invalid_argument("design_lowpass_4th: cutoff must lie in (0, sample_rate/2)");

    FilterStages stages;
    stages.cutoff_hz = cutoff;
    stages.sample_rate_hz = sample_rate;
    stages.order = 4;

    // Order-4 maximally-flat pole pairs, bilinear transform with prewarped
    // cutoff K = tan(pi*fc/fs). Damping per pair: zeta = -cos(theta).
    const double K = std::tan(std::numbers::pi * cutoff / sample_rate);
    const double thetas[2] = {5.0 * std::numbers::pi / 8.0, 7.0 * std::numbers::pi / 8.0};
    for (double theta : thetas) {
        const double zeta = -std::cos(theta);
        const double d = 1.0 + 2.0 * zeta * K + K * K;
        BiquadSection s{};
        s.b0 = K * K / d;
        s.b1 = 2.0 * s.b0;
        s.b2 = s.b0;
        s.a1 = 2.0 * (K * K - 1.0) / d;
        s.a2 = (1.0 - 2.0 * zeta * K + K * K) / d;
        // Pin DC gain to exactly 1 against rounding in the ratio above.
        const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
        s.b0 /= dc;
        s.b1 /= dc;
        s.b2 /= dc;
        if (!s.stable())
            throw std::runtime_error("design_lowpass_4th: designed section is unstable");
        stages.sections.push_back(s);
    }
    return stages;
}

std::complex<double> frequency_response(const FilterStages& stages, double freq) {
    const double omega = 2.0 * std::numbers::pi * freq / stages.sample_rate_hz;
    const std::complex<double> z_inv = std::polar(1.0, -omega);
    std::complex<double> h(1.0, 0.0);
    for (const auto& s : stages.sections) {
        const std::complex<double> num = s.b0 + s.b1 * z_inv + s.b2 * z_inv * z_inv;
        const std::complex<double> den = 1.0 + s.a1 * z_inv + s.a2 * z_inv * z_inv;
        h *= num / den;
    }
    return h;
}

Waveform filter_apply(const FilterStages& stages, const Waveform& w) {
    w.validate();
    if (stages.sections.empty()) throw std::invalid_argument("filter_apply: empty filter");
    if (w.sample_rate != stages.sample_rate_hz)
        throw std::invalid_argument("filter_apply: waveform sample rate does not match design");

    Waveform out = w;
    // Transposed direct form II, zero initial state per section.
    for (const auto& s : stages.sections) {
        double w1 = 0.0, w2 = 0.0;
        for (double& x : out.samples) {
            const double y = s.b0 * x + w1;
            w1 = s.b1 * x - s.a1 * y + w2;
            w2 = s.b2 * x - s.a2 * y;
            x = y;
        }
    }
    return out;
}

}  // namespace capsim
