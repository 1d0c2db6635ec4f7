#pragma once

#include <complex>
#include <vector>

#include "capsim/waveform.hpp"

namespace capsim {

struct BiquadSection {
    double b0, b1, b2;  // feedforward
    double a1, a2;      // feedback (a0 normalized to 1)

    // Both poles strictly inside the unit circle.
    bool stable() const { return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2; }
};

struct FilterStages {
    std::vector<BiquadSection> sections;
    double cutoff_hz = 0.0;
    double sample_rate_hz = 0.0;
    int order = 0;
};

/// Maximally-flat 4th-order low-pass as two cascaded biquads, unity DC gain.
FilterStages design_lowpass_4th(double cutoff, double sample_rate);

/// Cascade response H(e^{j2*pi*f/fs}).
std::complex<double> frequency_response(const FilterStages& stages, double freq);

/// Zero-state cascade filtering; output has the same length and rate.
Waveform filter_apply(const FilterStages& stages, const Waveform& w);

}  // namespace capsim
