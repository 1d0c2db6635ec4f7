#pragma once

#include <cstdint>

#include "capsim/waveform.hpp"

namespace capsim {

/// samples[k] = amplitude*sin(2*pi*freq*k/sample_rate + phase).
/// freq must lie strictly below Nyquist.
Waveform sine(double sample_rate, std::size_t n, double amplitude, double freq, double phase = 0.0);

/// Zero-mean Gaussian samples with per-sample sigma = density*sqrt(sample_rate/2).
/// Pure function of (parameters, seed).
Waveform white_noise(double sample_rate, std::size_t n, double density, std::uint64_t seed);

/// 1/f noise via one-sided spectral shaping: target PSD a1hz^2/f.
/// Requires n >= 4096 so the fitted band spans at least two decades.
Waveform flicker_noise(double sample_rate, std::size_t n, double a1hz, std::uint64_t seed);

/// White + flicker realization per spec, streams derived from spec.seed.
Waveform noise_waveform(double sample_rate, std::size_t n, const NoiseSpec& spec);

/// Welch averaged periodogram, Hann window, one-sided, Parseval-consistent.
Spectrum estimate_psd(const Waveform& w, std::size_t segment_len, double overlap_fraction = 0.5);

/// Least-squares slope of log10(psd) vs log10(f) over [f_lo, f_hi].
double psd_loglog_slope(const Spectrum& s, double f_lo, double f_hi);

}  // namespace capsim
