#include "capsim/harness.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "capsim/rng.hpp"

namespace capsim {

void MonteCarloSpec::validate() const {
    if (n_samples < 2) throw std::invalid_argument("MonteCarloSpec: n_samples must be >= 2");
    if (rel_spread_sensitivity < 0.0 || rel_spread_c_rest < 0.0)
        throw std::invalid_argument("MonteCarloSpec: spreads must be >= 0");
}

void CompareSpec::validate() const {
    if (!(c_low > 0.0 && c_high > c_low))
        throw std::invalid_argument("CompareSpec: need 0 < c_low < c_high");
    if (n_points < 2) throw std::invalid_argument("CompareSpec: n_points must be >= 2");
}

SampleStats stats(const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("stats: need at least 2 values");
    SampleStats s;
    s.per_sample = values;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    bool all_equal = true;
    for (double v : values) all_equal = all_equal && v == values.front();
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = all_equal ? 0.0 : std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.cv = s.mean != 0.0 ? s.std_dev / std::abs(s.mean) : 0.0;
    return s;
}

std::string format_stats_mv(const SampleStats& s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.2f mV, %.2f mV (%.2f %%)", s.mean * 1e3, s.std_dev * 1e3,
                  s.cv * 100.0);
    return buf;
}

SampleStats montecarlo_chopper(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                               double accel_g, const MonteCarloSpec& spec) {
    cfg.validate();
    spec.validate();
    std::vector<double> dc_values(spec.n_samples);
    for (int i = 0; i < spec.n_samples; ++i) {
        const std::uint64_t sample_seed = rng::derive(spec.master_seed, static_cast<std::uint64_t>(i));
        std::mt19937_64 eng(rng::derive(sample_seed, "device"));
        std::normal_distribution<double> gauss(0.0, 1.0);

        AccelHalfBridge device = bridge;
        const double g_sens = gauss(eng);
        const double g_rest = gauss(eng);
        device.sensitivity = bridge.sensitivity * (1.0 + spec.rel_spread_sensitivity * g_sens);
        device.c_rest = bridge.c_rest * (1.0 + spec.rel_spread_c_rest * g_rest);
        if (device.sensitivity <= 0.0 || device.c_rest <= 0.0)
            throw std::runtime_error("montecarlo_chopper: non-physical device draw at sample " +
                                     std::to_string(i));

        NoiseSpec noise = spec.noise;
        noise.seed = rng::derive(sample_seed, "noise");
        try {
            dc_values[i] = run_chain(cfg, device, accel_g, noise).dc_out;
        } catch (const std::exception& e) {
            throw std::runtime_error("montecarlo_chopper: sample " + std::to_string(i) +
                                     " failed: " + e.what());
        }
    }
    return stats(dc_values);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo && n >= 2))
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> out(n);
    const double l0 = std::log10(lo);
    const double l1 = std::log10(hi);
    for (int i = 0; i < n; ++i)
        out[i] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) /
                                     static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

ComparisonReport compare_interfaces(const CfcConfig& cfc_cfg, const ChopperConfig& ch_cfg,
                                    const CompareSpec& spec) {
    cfc_cfg.validate();
    ch_cfg.validate();
    spec.validate();

    ComparisonReport report;

    // Capacitance-to-frequency converter: analytic sweep linearity plus
    // counter-quantization resolution at the top of the range (worst case,
    // lowest frequency).
    const auto c_values = log_spaced(spec.c_low, spec.c_high, spec.n_points);
    const auto rows = sweep_transfer(cfc_cfg, c_values);
    std::vector<double> ts;
    ts.reserve(rows.size());
    for (const auto& r : rows) ts.push_back(r.cycle_time);
    const LinearFit fit = linear_fit(c_values, ts);
    const double k_slope = fit.slope;  // seconds per farad
    const double c_worst = cfc_cfg.c_parallel + spec.c_high;
    // One counter LSB: |dC/df| * (1/gate) with f = 1/(k*C).
    const double cfc_resolution = k_slope * c_worst * c_worst / cfc_cfg.gate_time;

    report.cfc.name = "cfc";
    report.cfc.capacitance_range_low = spec.c_low;
    report.cfc.capacitance_range_high = spec.c_high;
    report.cfc.smallest_resolvable_dc = cfc_resolution;
    report.cfc.linearity_r2 = fit.r_squared;
    report.cfc.stage_count = 2;  // oscillator, counter
    report.cfc.noise_robustness_db = std::nullopt;

    // Chopper chain: noise floor at zero acceleration sets the 3-sigma
    // resolvable capacitance change; range tops out at bridge over-range.
    NoiseSpec floor_noise = spec.noise;
    const ChopperResult at_rest = run_chain(ch_cfg, spec.bridge, 0.0, floor_noise);
    const std::size_t start = static_cast<std::size_t>(
        ch_cfg.settle_fraction * static_cast<double>(at_rest.v_out.samples.size()));
    std::vector<double> window(at_rest.v_out.samples.begin() + static_cast<std::ptrdiff_t>(start),
                               at_rest.v_out.samples.end());
    const double sigma_floor = stats(window).std_dev;
    const double gain_per_farad = ch_cfg.demod_scale * ch_cfg.instr_gain * ch_cfg.v_carrier *
                                  ch_cfg.v_carrier / ch_cfg.c_integrate;  // dc volts per dC farad
    const double chopper_resolution = 3.0 * sigma_floor / gain_per_farad;

    std::vector<double> accels = {0.25, 0.5, 1.0, 2.0};
    std::vector<double> dcs;
    NoiseSpec quiet;  // linearity judged noise-free
    for (double a : accels) dcs.push_back(run_chain(ch_cfg, spec.bridge, a, quiet).dc_out);
    const LinearFit ch_fit = linear_fit(accels, dcs);

    report.chopper.name = "chopper";
    report.chopper.capacitance_range_low = chopper_resolution;
    report.chopper.capacitance_range_high = spec.bridge.c_rest;  // over-range bound on dC
    report.chopper.smallest_resolvable_dc = chopper_resolution;
    report.chopper.linearity_r2 = ch_fit.r_squared;
    report.chopper.stage_count = 5;  // carrier, charge amp, instr amp, demodulator, LPF
    if (spec.noise.flicker_a1hz > 0.0) {
        report.chopper.noise_robustness_db =
            flicker_suppression_metric(ch_cfg, spec.bridge, 1.0, spec.noise);
    }
    return report;
}

}  // namespace capsim
