#include "capsim/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <random>

#include "capsim/rng.hpp"

namespace capsim {

namespace {

// FFTW planning is not thread-safe; execution of a ready plan is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

// Forward r2c transform of x, FFTW sign/scale conventions (unnormalized).
std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> in(x);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

// Inverse c2r transform, normalized by 1/n.
std::vector<double> irfft(std::vector<std::complex<double>> spec, std::size_t n) {
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                    reinterpret_cast<fftw_complex*>(spec.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= inv;
    return out;
}

}  // namespace

Waveform sine(double sample_rate, std::size_t n, double amplitude, double freq, double phase) {
    if (sample_rate <= 0.0) throw std::invalid_argument("sine: sample_rate must be > 0");
    if (n == 0) throw std::invalid_argument("sine: n must be >= 1");
    if (freq <= 0.0 || freq >= sample_rate / 2.0)
        throw std::invalid_argument("sine: freq must lie in (0, sample_rate/2) to avoid aliasing");
    Waveform w;
    w.sample_rate = sample_rate;
    w.samples.resize(n);
    const double omega = 2.0 * std::numbers::pi * freq / sample_rate;
    for (std::size_t k = 0; k < n; ++k)
        w.samples[k] = amplitude * std::sin(omega * static_cast<double>(k) + phase);
    return w;
}

Waveform white_noise(double sample_rate, std::size_t n, double density, std::uint64_t seed) {
    if (sample_rate <= 0.0) throw std::invalid_argument("white_noise: sample_rate must be > 0");
    if (n == 0) throw std::invalid_argument("white_noise: n must be >= 1");
    if (density < 0.0) throw std::invalid_argument("white_noise: density must be >= 0");
    Waveform w;
    w.sample_rate = sample_rate;
    if (density == 0.0) {
        w.samples.assign(n, 0.0);
        return w;
    }
    const double sigma = density * std::sqrt(sample_rate / 2.0);
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    w.samples.resize(n);
    for (double& v : w.samples) v = gauss(eng);
    return w;
}

Waveform flicker_noise(double sample_rate, std::size_t n, double a1hz, std::uint64_t seed) {
    if (sample_rate <= 0.0) throw std::invalid_argument("flicker_noise: sample_rate must be > 0");
    if (a1hz < 0.0) throw std::invalid_argument("flicker_noise: a1hz must be >= 0");
    if (n < 4096)
        throw std::invalid_argument("flicker_noise: n must be >= 4096 (two resolvable decades)");
    Waveform w;
    w.sample_rate = sample_rate;
    if (a1hz == 0.0) {
        w.samples.assign(n, 0.0);
        return w;
    }

    // Shape a Gaussian spectrum to the one-sided target S(f) = a1hz^2/f.
    // With E|X_k|^2 = S(f_k)*fs*n/2 the synthesized one-sided PSD matches S.
    const std::size_t nbins = n / 2 + 1;
    std::vector<std::complex<double>> spec(nbins, {0.0, 0.0});
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double df = sample_rate / static_cast<double>(n);
    for (std::size_t k = 1; k < nbins; ++k) {
        const double f = df * static_cast<double>(k);
        const double target_psd = a1hz * a1hz / f;
        const bool nyquist = (n % 2 == 0) && (k == nbins - 1);
        if (nyquist) {
            spec[k] = {std::sqrt(target_psd * sample_rate * static_cast<double>(n) / 2.0) *
                           gauss(eng),
                       0.0};
        } else {
            const double amp =
                std::sqrt(target_psd * sample_rate * static_cast<double>(n) / 4.0);
            spec[k] = {amp * gauss(eng), amp * gauss(eng)};
        }
    }
    w.samples = irfft(std::move(spec), n);
    return w;
}

Waveform noise_waveform(double sample_rate, std::size_t n, const NoiseSpec& spec) {
    Waveform w = white_noise(sample_rate, n, spec.white_density, rng::derive(spec.seed, "white"));
    if (spec.flicker_a1hz > 0.0) {
        const Waveform fl =
            flicker_noise(sample_rate, n, spec.flicker_a1hz, rng::derive(spec.seed, "flicker"));
        w = wave_add(w, fl);
    }
    return w;
}

Spectrum estimate_psd(const Waveform& w, std::size_t segment_len, double overlap_fraction) {
    w.validate();
    if (segment_len < 2 || segment_len > w.samples.size())
        throw std::invalid_argument("estimate_psd: segment_len must be in [2, len(samples)]");
    if (overlap_fraction < 0.0 || overlap_fraction >= 1.0)
        throw std::invalid_argument("estimate_psd: overlap_fraction must be in [0, 1)");

    // Periodic Hann window.
    std::vector<double> window(segment_len);
    double wss = 0.0;
    for (std::size_t j = 0; j < segment_len; ++j) {
        window[j] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(segment_len)));
        wss += window[j] * window[j];
    }

    std::size_t hop = static_cast<std::size_t>(
        std::lround(static_cast<double>(segment_len) * (1.0 - overlap_fraction)));
    if (hop == 0) hop = 1;

    const std::size_t nbins = segment_len / 2 + 1;
    std::vector<double> acc(nbins, 0.0);
    std::size_t n_segments = 0;
    std::vector<double> seg(segment_len);
    for (std::size_t start = 0; start + segment_len <= w.samples.size(); start += hop) {
        for (std::size_t j = 0; j < segment_len; ++j)
            seg[j] = w.samples[start + j] * window[j];
        const auto spec = rfft(seg);
        for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(spec[k]);
        ++n_segments;
    }

    Spectrum out;
    out.frequencies.resize(nbins);
    out.psd.resize(nbins);
    const double df = w.sample_rate / static_cast<double>(segment_len);
    const double scale = 1.0 / (static_cast<double>(n_segments) * w.sample_rate * wss);
    for (std::size_t k = 0; k < nbins; ++k) {
        out.frequencies[k] = df * static_cast<double>(k);
        const bool edge = (k == 0) || ((segment_len % 2 == 0) && k == nbins - 1);
        out.psd[k] = acc[k] * scale * (edge ? 1.0 : 2.0);
    }
    return out;
}

double psd_loglog_slope(const Spectrum& s, double f_lo, double f_hi) {
    if (f_lo <= 0.0 || f_hi <= f_lo)
        throw std::invalid_argument("psd_loglog_slope: need 0 < f_lo < f_hi");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < s.frequencies.size(); ++k) {
        const double f = s.frequencies[k];
        if (f < f_lo || f > f_hi || s.psd[k] <= 0.0) continue;
        const double x = std::log10(f);
        const double y = std::log10(s.psd[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 8) throw std::invalid_argument("psd_loglog_slope: too few bins in fit band");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace capsim
