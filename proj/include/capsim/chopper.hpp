#pragma once

#include <cstdint>
#include <utility>

#include "capsim/sensors.hpp"
#include "capsim/waveform.hpp"

namespace capsim {

/// Chopper-stabilized charge-amplifier chain parameters.
struct ChopperConfig {
    double v_carrier = 1.0;       // volts, carrier amplitude V_M
    double f_carrier = 10e3;      // Hz
    double c_integrate = 5e-12;   // farads, integration capacitor C_I
    double instr_gain = 1.0;      // instrumentation amplifier gain
    double demod_scale = 1.0;     // 1/volts, multiplier scale
    double lpf_cutoff = 100.0;    // Hz
    double sample_rate = 1e6;     // Hz
    double duration = 0.2;        // seconds
    double settle_fraction = 0.5;
    double c_parasitic_plus = 0.0;   // farads, additive per bridge node
    double c_parasitic_minus = 0.0;  // farads

    void validate() const;
    std::size_t sample_count() const;
};

struct ChopperResult {
    Waveform v_y;      // modulated single-ended output (after instr amp)
    Waveform v_z;      // demodulated, pre-filter
    Waveform v_out;    // filtered
    double dc_out = 0.0;       // volts, mean over post-settle window
    double expected_dc = 0.0;  // volts, closed-form prediction
};

/// Charge-amplifier pair: v_y_plus = -carrier*c_minus/c_integrate,
/// v_y_minus = -carrier*c_plus/c_integrate.
std::pair<Waveform, Waveform> charge_amp(const Waveform& carrier, double c_plus, double c_minus,
                                         double c_integrate);

/// gain*(v_y_plus - v_y_minus): differential-to-single-ended conversion.
Waveform instr_amp(const Waveform& v_y_plus, const Waveform& v_y_minus, double gain);

/// Ideal analog multiplier: v_z[k] = demod_scale*v_y[k]*carrier[k].
Waveform demodulate(const Waveform& v_y, const Waveform& carrier, double demod_scale);

/// Arithmetic mean of samples with index >= settle_fraction*len.
double dc_estimate(const Waveform& w, double settle_fraction);

/// Full chain at constant acceleration. Noise (white + flicker, streams
/// derived from noise.seed) enters additively at the instrumentation-amplifier
/// input.
ChopperResult run_chain(const ChopperConfig& cfg, const AccelHalfBridge& bridge, double accel_g,
                        const NoiseSpec& noise);

/// Variant hook: per-sample acceleration profile instead of a constant.
ChopperResult run_chain_profile(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                                const Waveform& accel_profile_g, const NoiseSpec& noise);

/// 20*log10(error_rms_baseline / error_rms_chopped) on identical noise
/// realizations. Baseline is a gain-matched unmodulated chain: DC excitation
/// at the carrier's RMS level, same injection point, same low-pass filter.
double flicker_suppression_metric(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                                  double accel_g, const NoiseSpec& noise);

}  // namespace capsim
