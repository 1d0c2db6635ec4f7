#pragma once

#include <cstdint>
#include <vector>

#include "capsim/waveform.hpp"

namespace capsim {

/// Relaxation-oscillator capacitance-to-frequency converter parameters.
struct CfcConfig {
    double v_supply = 5.0;            // volts
    double charge_current = 40e-6;    // amperes
    double c_parallel = 0.0;          // farads, in parallel with the sensor
    double gate_time = 10e-3;         // seconds
    double threshold_low_fraction = 1.0 / 3.0;
    double threshold_high_fraction = 2.0 / 3.0;

    void validate() const;
};

struct CfcResult {
    std::vector<double> cycle_times;      // seconds, successive full cycles
    std::vector<double> charge_times;     // per-cycle charge-phase duration
    std::vector<double> discharge_times;  // per-cycle discharge-phase duration
    double mean_frequency = 0.0;      // Hz, 1/mean(cycle_times)
    double counted_frequency = 0.0;   // Hz, count/gate_time
    long long count = 0;
};

struct SweepRow {
    double capacitance;  // farads
    double cycle_time;   // seconds
    double frequency;    // Hz
};

/// T = 2*(high-low)*v_supply/charge_current * (c_parallel + c_sense).
/// With the default 1/3 and 2/3 thresholds this is T = 2*V_S/(3*I)*(C_0+C_S).
double cycle_time_analytic(const CfcConfig& cfg, double c_sense);

/// Constant-current charge/discharge between the two comparator thresholds,
/// crossing instants refined by linear interpolation. Noise is added to the
/// capacitor voltage before comparison.
CfcResult simulate_transient(const CfcConfig& cfg, double c_sense, const NoiseSpec& noise,
                             double dt, std::size_t n_cycles);

/// Gate-time counter: complete cycles whose end falls inside the gate window.
std::pair<long long, double> count_cycles(const std::vector<double>& cycle_times,
                                          double gate_time);

/// Analytic transfer table over the given capacitances, input order preserved.
std::vector<SweepRow> sweep_transfer(const CfcConfig& cfg, const std::vector<double>& c_values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace capsim
