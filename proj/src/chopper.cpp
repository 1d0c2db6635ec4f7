#include "capsim/chopper.hpp"

#include <cmath>
#include <stdexcept>

#include "capsim/filter.hpp"
#include "capsim/signal.hpp"

namespace capsim {

void ChopperConfig::validate() const {
    if (v_carrier <= 0.0) throw std::invalid_argument("ChopperConfig: v_carrier must be > 0");
    if (!(f_carrier > 0.0 && f_carrier < sample_rate / 2.0))
        throw std::invalid_argument("ChopperConfig: f_carrier must lie in (0, sample_rate/2)");
    if (c_integrate <= 0.0) throw std::invalid_argument("ChopperConfig: c_integrate must be > 0");
    if (!(lpf_cutoff > 0.0 && lpf_cutoff < f_carrier / 5.0))
        throw std::invalid_argument("ChopperConfig: lpf_cutoff must lie in (0, f_carrier/5)");
    if (duration <= 0.0) throw std::invalid_argument("ChopperConfig: duration must be > 0");
    if (!(settle_fraction > 0.0 && settle_fraction < 1.0))
        throw std::invalid_argument("ChopperConfig: settle_fraction must lie in (0, 1)");
    if (c_parasitic_plus < 0.0 || c_parasitic_minus < 0.0)
        throw std::invalid_argument("ChopperConfig: parasitic capacitances must be >= 0");
}

std::size_t ChopperConfig::sample_count() const {
    return static_cast<std::size_t>(std::llround(duration * sample_rate));
}

std::pair<Waveform, Waveform> charge_amp(const Waveform& carrier, double c_plus, double c_minus,
                                         double c_integrate) {
    carrier.validate();
    if (c_integrate <= 0.0) throw std::invalid_argument("charge_amp: c_integrate must be > 0");
    if (c_plus <= 0.0 || c_minus <= 0.0)
        throw std::invalid_argument("charge_amp: bridge capacitances must be > 0");
    // v_y+ sees the smaller bridge arm (C_S - dC), v_y- the larger.
    return {wave_scale(carrier, -c_minus / c_integrate),
            wave_scale(carrier, -c_plus / c_integrate)};
}

Waveform instr_amp(const Waveform& v_y_plus, const Waveform& v_y_minus, double gain) {
    return wave_scale(wave_sub(v_y_plus, v_y_minus), gain);
}

Waveform demodulate(const Waveform& v_y, const Waveform& carrier, double demod_scale) {
    return wave_scale(wave_mul(v_y, carrier), demod_scale);
}

double dc_estimate(const Waveform& w, double settle_fraction) {
    w.validate();
    if (!(settle_fraction > 0.0 && settle_fraction < 1.0))
        throw std::invalid_argument("dc_estimate: settle_fraction must lie in (0, 1)");
    const std::size_t start = static_cast<std::size_t>(
        settle_fraction * static_cast<double>(w.samples.size()));
    if (start >= w.samples.size()) throw std::invalid_argument("dc_estimate: empty window");
    double acc = 0.0;
    for (std::size_t k = start; k < w.samples.size(); ++k) acc += w.samples[k];
    return acc / static_cast<double>(w.samples.size() - start);
}

namespace {

double window_rms_error(const Waveform& w, double settle_fraction, double ideal) {
    const std::size_t start = static_cast<std::size_t>(
        settle_fraction * static_cast<double>(w.samples.size()));
    double acc = 0.0;
    for (std::size_t k = start; k < w.samples.size(); ++k) {
        const double e = w.samples[k] - ideal;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(w.samples.size() - start));
}

ChopperResult run_chain_impl(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                             const Waveform* accel_profile, double accel_g,
                             const NoiseSpec& noise) {
    cfg.validate();
    const std::size_t n = cfg.sample_count();
    if (n == 0) throw std::invalid_argument("run_chain: duration too short for sample rate");

    const Waveform carrier = sine(cfg.sample_rate, n, cfg.v_carrier, cfg.f_carrier);

    // Modulated differential signal before the instrumentation amplifier:
    // carrier * (c_plus - c_minus) / c_integrate, parasitics added per node.
    Waveform diff = carrier;
    if (accel_profile) {
        if (accel_profile->samples.size() != n || accel_profile->sample_rate != cfg.sample_rate)
            throw std::invalid_argument("run_chain: acceleration profile shape mismatch");
        for (std::size_t k = 0; k < n; ++k) {
            const auto [cp, cm] = halfbridge_capacitances(bridge, accel_profile->samples[k]);
            diff.samples[k] *= ((cp + cfg.c_parasitic_plus) - (cm + cfg.c_parasitic_minus)) /
                               cfg.c_integrate;
        }
    } else {
        const auto [cp, cm] = halfbridge_capacitances(bridge, accel_g);
        const double ratio =
            ((cp + cfg.c_parasitic_plus) - (cm + cfg.c_parasitic_minus)) / cfg.c_integrate;
        diff = wave_scale(diff, ratio);
    }

    // Amplifier noise enters at the instrumentation-amplifier input, the
    // low-frequency contribution chopping must reject.
    if (!noise.silent()) diff = wave_add(diff, noise_waveform(cfg.sample_rate, n, noise));

    ChopperResult result;
    result.v_y = wave_scale(diff, cfg.instr_gain);
    result.v_z = demodulate(result.v_y, carrier, cfg.demod_scale);
    const FilterStages lpf = design_lowpass_4th(cfg.lpf_cutoff, cfg.sample_rate);
    result.v_out = filter_apply(lpf, result.v_z);
    result.dc_out = dc_estimate(result.v_out, cfg.settle_fraction);
    result.expected_dc = cfg.demod_scale * cfg.instr_gain * (cfg.v_carrier * cfg.v_carrier / 2.0) *
                         (2.0 * bridge.sensitivity * accel_g / cfg.c_integrate);
    return result;
}

}  // namespace

ChopperResult run_chain(const ChopperConfig& cfg, const AccelHalfBridge& bridge, double accel_g,
                        const NoiseSpec& noise) {
    return run_chain_impl(cfg, bridge, nullptr, accel_g, noise);
}

ChopperResult run_chain_profile(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                                const Waveform& accel_profile_g, const NoiseSpec& noise) {
    return run_chain_impl(cfg, bridge, &accel_profile_g, 0.0, noise);
}

double flicker_suppression_metric(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                                  double accel_g, const NoiseSpec& noise) {
    cfg.validate();
    if (noise.silent())
        throw std::invalid_argument("flicker_suppression_metric: zero-noise input is degenerate");

    const std::size_t n = cfg.sample_count();
    const Waveform noise_wave = noise_waveform(cfg.sample_rate, n, noise);
    const auto [cp, cm] = halfbridge_capacitances(bridge, accel_g);
    const double ratio = ((cp + cfg.c_parasitic_plus) - (cm + cfg.c_parasitic_minus)) /
                         cfg.c_integrate;
    const double ideal = cfg.demod_scale * cfg.instr_gain *
                         (cfg.v_carrier * cfg.v_carrier / 2.0) * ratio;
    const FilterStages lpf = design_lowpass_4th(cfg.lpf_cutoff, cfg.sample_rate);

    // Chopped chain on this noise realization.
    const Waveform carrier = sine(cfg.sample_rate, n, cfg.v_carrier, cfg.f_carrier);
    Waveform v_y = wave_scale(wave_add(wave_scale(carrier, ratio), noise_wave), cfg.instr_gain);
    Waveform v_out = filter_apply(lpf, demodulate(v_y, carrier, cfg.demod_scale));
    const double err_chopped = window_rms_error(v_out, cfg.settle_fraction, ideal);

    // Gain-matched baseline: DC excitation at the carrier's RMS level, same
    // noise injection point and filter, constant demodulation factor. Its
    // ideal output and its white-noise gain both match the chopped chain, so
    // the metric isolates what chopping buys against 1/f noise.
    const double v_dc = cfg.v_carrier / std::sqrt(2.0);
    const Waveform excitation = constant_wave(cfg.sample_rate, n, v_dc);
    Waveform v_y_base =
        wave_scale(wave_add(wave_scale(excitation, ratio), noise_wave), cfg.instr_gain);
    Waveform v_out_base = filter_apply(lpf, wave_scale(v_y_base, cfg.demod_scale * v_dc));
    const double err_baseline = window_rms_error(v_out_base, cfg.settle_fraction, ideal);

    return 20.0 * std::log10(err_baseline / err_chopped);
}

}  // namespace capsim
