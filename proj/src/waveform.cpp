#include "capsim/waveform.hpp"

#include <cmath>

namespace capsim {

namespace {

void check_same_shape(const Waveform& a, const Waveform& b) {
    if (a.sample_rate != b.sample_rate)
        throw std::invalid_argument("waveform arithmetic: sample rate mismatch");
    if (a.samples.size() != b.samples.size())
        throw std::invalid_argument("waveform arithmetic: length mismatch");
}

}  // namespace

Waveform constant_wave(double sample_rate, std::size_t n, double value) {
    if (sample_rate <= 0.0) throw std::invalid_argument("constant_wave: sample_rate must be > 0");
    if (n == 0) throw std::invalid_argument("constant_wave: n must be >= 1");
    Waveform w;
    w.sample_rate = sample_rate;
    w.samples.assign(n, value);
    return w;
}

double wave_mean(const Waveform& w) {
    w.validate();
    double acc = 0.0;
    for (double v : w.samples) acc += v;
    return acc / static_cast<double>(w.samples.size());
}

double wave_rms(const Waveform& w) {
    w.validate();
    double acc = 0.0;
    for (double v : w.samples) acc += v * v;
    return std::sqrt(acc / static_cast<double>(w.samples.size()));
}

Waveform wave_add(const Waveform& a, const Waveform& b) {
    check_same_shape(a, b);
    Waveform out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += b.samples[i];
    return out;
}

Waveform wave_sub(const Waveform& a, const Waveform& b) {
    check_same_shape(a, b);
    Waveform out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] -= b.samples[i];
    return out;
}

Waveform wave_mul(const Waveform& a, const Waveform& b) {
    check_same_shape(a, b);
    Waveform out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] *= b.samples[i];
    return out;
}

Waveform wave_scale(const Waveform& a, double k) {
    Waveform out = a;
    for (double& v : out.samples) v *= k;
    return out;
}

}  // namespace capsim
