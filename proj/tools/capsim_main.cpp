// capsim command-line front end: experiment dispatch + CSV/report emission.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "capsim/filter.hpp"
#include "capsim/harness.hpp"
#include "capsim/signal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunConfig {
    capsim::CfcConfig cfc;
    capsim::ChopperConfig chopper;
    capsim::NoiseSpec noise{1e-6, 10e-6, 0};
    capsim::AccelHalfBridge bridge;
    capsim::MonteCarloSpec montecarlo;
    capsim::CompareSpec compare;
    double accel_g = 1.0;
    // cfc-transient
    double c_sense = 120e-12;
    double dt_fraction = 1e-3;  // dt as a fraction of the analytic cycle time
    std::size_t n_cycles = 100;
    // psd
    std::size_t psd_n = 1 << 20;
    double psd_sample_rate = 100e3;
    std::size_t psd_segment_len = 1 << 14;
    double psd_overlap = 0.5;
    // chopper-run csv decimation
    std::size_t csv_stride = 10;
};

double jget(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::uint64_t jget_u64(const json& j, const char* key, std::uint64_t fallback) {
    return j.contains(key) ? j.at(key).get<std::uint64_t>() : fallback;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    cfg.montecarlo.n_samples = 100;
    cfg.montecarlo.rel_spread_sensitivity = 0.0477;
    if (path.empty()) {
        cfg.montecarlo.noise = cfg.noise;
        cfg.compare.noise = cfg.noise;
        cfg.compare.bridge = cfg.bridge;
        return cfg;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config file not readable: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    if (j.contains("cfc")) {
        const auto& c = j["cfc"];
        cfg.cfc.v_supply = jget(c, "v_supply", cfg.cfc.v_supply);
        cfg.cfc.charge_current = jget(c, "charge_current", cfg.cfc.charge_current);
        cfg.cfc.c_parallel = jget(c, "c_parallel", cfg.cfc.c_parallel);
        cfg.cfc.gate_time = jget(c, "gate_time", cfg.cfc.gate_time);
        cfg.cfc.threshold_low_fraction =
            jget(c, "threshold_low_fraction", cfg.cfc.threshold_low_fraction);
        cfg.cfc.threshold_high_fraction =
            jget(c, "threshold_high_fraction", cfg.cfc.threshold_high_fraction);
    }
    if (j.contains("chopper")) {
        const auto& c = j["chopper"];
        cfg.chopper.v_carrier = jget(c, "v_carrier", cfg.chopper.v_carrier);
        cfg.chopper.f_carrier = jget(c, "f_carrier", cfg.chopper.f_carrier);
        cfg.chopper.c_integrate = jget(c, "c_integrate", cfg.chopper.c_integrate);
        cfg.chopper.instr_gain = jget(c, "instr_gain", cfg.chopper.instr_gain);
        cfg.chopper.demod_scale = jget(c, "demod_scale", cfg.chopper.demod_scale);
        cfg.chopper.lpf_cutoff = jget(c, "lpf_cutoff", cfg.chopper.lpf_cutoff);
        cfg.chopper.sample_rate = jget(c, "sample_rate", cfg.chopper.sample_rate);
        cfg.chopper.duration = jget(c, "duration", cfg.chopper.duration);
        cfg.chopper.settle_fraction = jget(c, "settle_fraction", cfg.chopper.settle_fraction);
        cfg.chopper.c_parasitic_plus =
            jget(c, "c_parasitic_plus", cfg.chopper.c_parasitic_plus);
        cfg.chopper.c_parasitic_minus =
            jget(c, "c_parasitic_minus", cfg.chopper.c_parasitic_minus);
    }
    if (j.contains("noise")) {
        const auto& c = j["noise"];
        cfg.noise.white_density = jget(c, "white_density", cfg.noise.white_density);
        cfg.noise.flicker_a1hz = jget(c, "flicker_a1hz", cfg.noise.flicker_a1hz);
        cfg.noise.seed = jget_u64(c, "seed", cfg.noise.seed);
    }
    if (j.contains("bridge")) {
        const auto& c = j["bridge"];
        cfg.bridge.c_rest = jget(c, "c_rest", cfg.bridge.c_rest);
        cfg.bridge.sensitivity = jget(c, "sensitivity", cfg.bridge.sensitivity);
    }
    if (j.contains("montecarlo")) {
        const auto& c = j["montecarlo"];
        cfg.montecarlo.n_samples =
            static_cast<int>(jget(c, "n_samples", cfg.montecarlo.n_samples));
        cfg.montecarlo.rel_spread_sensitivity =
            jget(c, "rel_spread_sensitivity", cfg.montecarlo.rel_spread_sensitivity);
        cfg.montecarlo.rel_spread_c_rest =
            jget(c, "rel_spread_c_rest", cfg.montecarlo.rel_spread_c_rest);
    }
    if (j.contains("sweep")) {
        const auto& c = j["sweep"];
        cfg.compare.c_low = jget(c, "c_low", cfg.compare.c_low);
        cfg.compare.c_high = jget(c, "c_high", cfg.compare.c_high);
        cfg.compare.n_points = static_cast<int>(jget(c, "n_points", cfg.compare.n_points));
    }
    if (j.contains("cfc_transient")) {
        const auto& c = j["cfc_transient"];
        cfg.c_sense = jget(c, "c_sense", cfg.c_sense);
        cfg.dt_fraction = jget(c, "dt_fraction", cfg.dt_fraction);
        cfg.n_cycles = static_cast<std::size_t>(jget(c, "n_cycles", static_cast<double>(cfg.n_cycles)));
    }
    if (j.contains("psd")) {
        const auto& c = j["psd"];
        cfg.psd_n = static_cast<std::size_t>(jget(c, "n", static_cast<double>(cfg.psd_n)));
        cfg.psd_sample_rate = jget(c, "sample_rate", cfg.psd_sample_rate);
        cfg.psd_segment_len =
            static_cast<std::size_t>(jget(c, "segment_len", static_cast<double>(cfg.psd_segment_len)));
        cfg.psd_overlap = jget(c, "overlap", cfg.psd_overlap);
    }
    cfg.accel_g = jget(j, "accel_g", cfg.accel_g);
    cfg.csv_stride = static_cast<std::size_t>(jget(j, "csv_stride", static_cast<double>(cfg.csv_stride)));
    cfg.montecarlo.noise = cfg.noise;
    cfg.compare.noise = cfg.noise;
    cfg.compare.bridge = cfg.bridge;
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << content;
}

void emit(const fs::path& out_dir, const std::string& csv_name, const std::string& csv,
          const std::string& summary) {
    fs::create_directories(out_dir);
    write_file(out_dir / csv_name, csv);
    write_file(out_dir / "summary.txt", summary);
    std::cout << summary;
}

int run_cfc_sweep(const RunConfig& cfg, const fs::path& out_dir) {
    const auto c_values = capsim::log_spaced(cfg.compare.c_low, cfg.compare.c_high,
                                             cfg.compare.n_points);
    const auto rows = capsim::sweep_transfer(cfg.cfc, c_values);
    std::ostringstream csv;
    csv << "capacitance_f,cycle_time_s,frequency_hz\n";
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        csv << g17(r.capacitance) << ',' << g17(r.cycle_time) << ',' << g17(r.frequency) << '\n';
        xs.push_back(r.capacitance);
        ys.push_back(r.cycle_time);
    }
    const auto fit = capsim::linear_fit(xs, ys);
    const double expected_slope = 2.0 *
                                  (cfg.cfc.threshold_high_fraction - cfg.cfc.threshold_low_fraction) *
                                  cfg.cfc.v_supply / cfg.cfc.charge_current;
    std::ostringstream sum;
    sum << "cfc-sweep: " << rows.size() << " points over [" << g17(cfg.compare.c_low) << ", "
        << g17(cfg.compare.c_high) << "] F\n"
        << "fit slope_s_per_f = " << g17(fit.slope) << " (expected " << g17(expected_slope)
        << ")\n"
        << "fit r_squared = " << g17(fit.r_squared) << "\n";
    emit(out_dir, "cfc_sweep.csv", csv.str(), sum.str());
    return 0;
}

int run_cfc_transient(const RunConfig& cfg, const fs::path& out_dir) {
    const double t_analytic = capsim::cycle_time_analytic(cfg.cfc, cfg.c_sense);
    const double dt = t_analytic * cfg.dt_fraction;
    const auto result = capsim::simulate_transient(cfg.cfc, cfg.c_sense, cfg.noise, dt,
                                                   cfg.n_cycles);
    std::ostringstream csv;
    csv << "cycle_index,cycle_time_s\n";
    for (std::size_t i = 0; i < result.cycle_times.size(); ++i)
        csv << i << ',' << g17(result.cycle_times[i]) << '\n';
    const auto s = capsim::stats(result.cycle_times.size() >= 2
                                     ? result.cycle_times
                                     : std::vector<double>{result.cycle_times[0],
                                                           result.cycle_times[0]});
    std::ostringstream sum;
    sum << "cfc-transient: c_sense = " << g17(cfg.c_sense) << " F, dt = " << g17(dt) << " s, "
        << result.cycle_times.size() << " cycles\n"
        << "analytic cycle_time_s = " << g17(t_analytic) << "\n"
        << "mean cycle_time_s = " << g17(s.mean) << "\n"
        << "cycle jitter std_s = " << g17(s.std_dev) << "\n"
        << "mean_frequency_hz = " << g17(result.mean_frequency) << "\n"
        << "gate count = " << result.count << ", counted_frequency_hz = "
        << g17(result.counted_frequency) << "\n";
    emit(out_dir, "cfc_transient.csv", csv.str(), sum.str());
    return 0;
}

int run_chopper(const RunConfig& cfg, const fs::path& out_dir) {
    const auto result = capsim::run_chain(cfg.chopper, cfg.bridge, cfg.accel_g, cfg.noise);
    std::ostringstream csv;
    csv << "t_s,v_y_v,v_z_v,v_out_v\n";
    const std::size_t stride = cfg.csv_stride > 0 ? cfg.csv_stride : 1;
    for (std::size_t k = 0; k < result.v_y.samples.size(); k += stride) {
        csv << g17(static_cast<double>(k) / cfg.chopper.sample_rate) << ','
            << g17(result.v_y.samples[k]) << ',' << g17(result.v_z.samples[k]) << ','
            << g17(result.v_out.samples[k]) << '\n';
    }
    const double amplitude = std::sqrt(2.0) * capsim::wave_rms(result.v_y);
    std::ostringstream sum;
    sum << "chopper-run: accel_g = " << g17(cfg.accel_g) << "\n"
        << "modulated amplitude_v = " << g17(amplitude) << "\n"
        << "dc_out_v = " << g17(result.dc_out) << "\n"
        << "expected_dc_v = " << g17(result.expected_dc) << "\n";
    emit(out_dir, "chopper_run.csv", csv.str(), sum.str());
    return 0;
}

int run_suppression(const RunConfig& cfg, const fs::path& out_dir) {
    const double metric =
        capsim::flicker_suppression_metric(cfg.chopper, cfg.bridge, cfg.accel_g, cfg.noise);
    std::ostringstream csv;
    csv << "metric_db\n" << g17(metric) << '\n';
    std::ostringstream sum;
    sum << "chopper-suppression: metric_db = " << g17(metric) << "\n";
    emit(out_dir, "chopper_suppression.csv", csv.str(), sum.str());
    return 0;
}

int run_montecarlo(const RunConfig& cfg, const fs::path& out_dir) {
    const auto s = capsim::montecarlo_chopper(cfg.chopper, cfg.bridge, cfg.accel_g,
                                              cfg.montecarlo);
    std::ostringstream csv;
    csv << "sample_index,dc_out_v\n";
    for (std::size_t i = 0; i < s.per_sample.size(); ++i)
        csv << i << ',' << g17(s.per_sample[i]) << '\n';
    std::ostringstream sum;
    sum << "montecarlo: n = " << s.per_sample.size() << ", accel_g = " << g17(cfg.accel_g) << "\n"
        << "mean_v = " << g17(s.mean) << "\n"
        << "std_v = " << g17(s.std_dev) << "\n"
        << "cv = " << g17(s.cv) << "\n"
        << "report: " << capsim::format_stats_mv(s) << "\n";
    emit(out_dir, "montecarlo.csv", csv.str(), sum.str());
    return 0;
}

int run_compare(const RunConfig& cfg, const fs::path& out_dir) {
    const auto report = capsim::compare_interfaces(cfg.cfc, cfg.chopper, cfg.compare);
    std::ostringstream csv;
    csv << "name,capacitance_range_low_f,capacitance_range_high_f,smallest_resolvable_dc_f,"
           "linearity_r2,stage_count,noise_robustness_db\n";
    for (const auto* row : {&report.cfc, &report.chopper}) {
        csv << row->name << ',' << g17(row->capacitance_range_low) << ','
            << g17(row->capacitance_range_high) << ',' << g17(row->smallest_resolvable_dc) << ','
            << g17(row->linearity_r2) << ',' << row->stage_count << ','
            << (row->noise_robustness_db ? g17(*row->noise_robustness_db) : "n/a") << '\n';
    }
    const double cfc_span = report.cfc.capacitance_range_high - report.cfc.capacitance_range_low;
    const double ch_span =
        report.chopper.capacitance_range_high - report.chopper.capacitance_range_low;
    std::ostringstream sum;
    sum << "compare:\n"
        << "cfc range_f = " << g17(cfc_span) << ", chopper dC range_f = " << g17(ch_span)
        << (cfc_span > ch_span ? "  (cfc wider)" : "") << "\n"
        << "cfc resolution_f = " << g17(report.cfc.smallest_resolvable_dc)
        << ", chopper resolution_f = " << g17(report.chopper.smallest_resolvable_dc)
        << (report.chopper.smallest_resolvable_dc < report.cfc.smallest_resolvable_dc
                ? "  (chopper finer)"
                : "")
        << "\n"
        << "stage count: cfc " << report.cfc.stage_count << ", chopper "
        << report.chopper.stage_count
        << (report.chopper.stage_count > report.cfc.stage_count ? "  (chopper more complex)" : "")
        << "\n";
    if (report.chopper.noise_robustness_db)
        sum << "chopper flicker suppression_db = " << g17(*report.chopper.noise_robustness_db)
            << "\n";
    emit(out_dir, "compare.csv", csv.str(), sum.str());
    return 0;
}

int run_psd(const RunConfig& cfg, const fs::path& out_dir) {
    const auto wave = capsim::noise_waveform(cfg.psd_sample_rate, cfg.psd_n, cfg.noise);
    const auto spectrum = capsim::estimate_psd(wave, cfg.psd_segment_len, cfg.psd_overlap);
    std::ostringstream csv;
    csv << "frequency_hz,psd_v2_per_hz\n";
    for (std::size_t k = 0; k < spectrum.frequencies.size(); ++k)
        csv << g17(spectrum.frequencies[k]) << ',' << g17(spectrum.psd[k]) << '\n';
    std::ostringstream sum;
    sum << "psd: n = " << cfg.psd_n << ", fs_hz = " << g17(cfg.psd_sample_rate)
        << ", segment = " << cfg.psd_segment_len << "\n";
    if (cfg.noise.flicker_a1hz > 0.0) {
        const double f_lo = 10.0 * cfg.psd_sample_rate / static_cast<double>(cfg.psd_segment_len);
        const double f_hi = cfg.psd_sample_rate / 20.0;
        sum << "log-log slope over [" << g17(f_lo) << ", " << g17(f_hi)
            << "] Hz = " << g17(capsim::psd_loglog_slope(spectrum, f_lo, f_hi)) << "\n";
    }
    emit(out_dir, "psd.csv", csv.str(), sum.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capsim: capacitive sensor read-out interface simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    double accel_override = std::numeric_limits<double>::quiet_NaN();
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "output directory for CSV files and summary.txt");
    app.add_option("--seed", seed, "master seed for stochastic experiments");

    auto* sweep = app.add_subcommand("cfc-sweep", "analytic capacitance-to-frequency transfer sweep");
    auto* transient = app.add_subcommand("cfc-transient", "threshold-crossing oscillator transient");
    auto* chrun = app.add_subcommand("chopper-run", "chopper-stabilized chain at constant acceleration");
    chrun->add_option("--accel-g", accel_override, "constant acceleration in g");
    auto* suppression = app.add_subcommand("chopper-suppression", "flicker suppression metric");
    auto* mc = app.add_subcommand("montecarlo", "Monte Carlo over device spread");
    auto* compare = app.add_subcommand("compare", "interface comparison report");
    auto* psd = app.add_subcommand("psd", "noise waveform spectral estimate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (seed) {
            cfg.noise.seed = *seed;
            cfg.montecarlo.master_seed = *seed;
            cfg.montecarlo.noise.seed = *seed;
            cfg.compare.noise.seed = *seed;
        } else {
            cfg.montecarlo.master_seed = cfg.noise.seed;
        }
        if (!std::isnan(accel_override)) cfg.accel_g = accel_override;

        const bool stochastic = mc->parsed() || suppression->parsed() || psd->parsed() ||
                                (transient->parsed() && !cfg.noise.silent());
        if (stochastic && !seed && cfg.noise.seed == 0 && config_path.empty()) {
            // Seed 0 is a valid seed; only flag the fully-default case.
            std::cerr << "note: stochastic experiment running with default seed 0\n";
        }

        const fs::path out(out_dir);
        if (sweep->parsed()) return run_cfc_sweep(cfg, out);
        if (transient->parsed()) return run_cfc_transient(cfg, out);
        if (chrun->parsed()) return run_chopper(cfg, out);
        if (suppression->parsed()) return run_suppression(cfg, out);
        if (mc->parsed()) return run_montecarlo(cfg, out);
        if (compare->parsed()) return run_compare(cfg, out);
        if (psd->parsed()) return run_psd(cfg, out);
        std::cerr << "error: no experiment selected\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
