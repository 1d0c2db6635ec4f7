#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace capsim {

/// Uniformly sampled real-valued time series in volts.
struct Waveform {
    double sample_rate = 0.0;  // Hz, > 0
    std::vector<double> samples;
    double t0 = 0.0;  // seconds

    std::size_t size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) / sample_rate; }

    void validate() const {
        if (sample_rate <= 0.0) throw std::invalid_argument("Waveform: sample_rate must be > 0");
        if (samples.empty()) throw std::invalid_argument("Waveform: samples must be nonempty");
    }
};

/// One-sided power spectral density, V^2/Hz over strictly increasing frequencies.
struct Spectrum {
    std::vector<double> frequencies;  // Hz
    std::vector<double> psd;          // V^2/Hz
};

/// Amplifier noise model: independent white and 1/f processes.
struct NoiseSpec {
    double white_density = 0.0;  // V/sqrt(Hz)
    double flicker_a1hz = 0.0;   // V/sqrt(Hz) at 1 Hz
    std::uint64_t seed = 0;

    bool silent() const { return white_density == 0.0 && flicker_a1hz == 0.0; }
};

Waveform constant_wave(double sample_rate, std::size_t n, double value);

double wave_mean(const Waveform& w);
double wave_rms(const Waveform& w);

// Element-wise arithmetic; shapes and rates must match.
Waveform wave_add(const Waveform& a, const Waveform& b);
Waveform wave_sub(const Waveform& a, const Waveform& b);
Waveform wave_mul(const Waveform& a, const Waveform& b);
Waveform wave_scale(const Waveform& a, double k);

}  // namespace capsim
