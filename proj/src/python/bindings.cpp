#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capsim/filter.hpp"
#include "capsim/harness.hpp"
#include "capsim/signal.hpp"

namespace py = pybind11;
using namespace capsim;

PYBIND11_MODULE(_capsim, m) {
    m.doc() = "Capacitive sensor read-out interface simulator";

    py::class_<Waveform>(m, "Waveform")
        .def(py::init<>())
        .def(py::init([](double sample_rate, std::vector<double> samples, double t0) {
                 Waveform w{sample_rate, std::move(samples), t0};
                 w.validate();
                 return w;
             }),
             py::arg("sample_rate"), py::arg("samples"), py::arg("t0") = 0.0)
        .def_readwrite("sample_rate", &Waveform::sample_rate)
        .def_readwrite("samples", &Waveform::samples)
        .def_readwrite("t0", &Waveform::t0)
        .def("duration", &Waveform::duration)
        .def("__len__", [](const Waveform& w) { return w.samples.size(); });

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("frequencies", &Spectrum::frequencies)
        .def_readonly("psd", &Spectrum::psd);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init<>())
        .def(py::init<double, double, std::uint64_t>(), py::arg("white_density") = 0.0,
             py::arg("flicker_a1hz") = 0.0, py::arg("seed") = 0)
        .def_readwrite("white_density", &NoiseSpec::white_density)
        .def_readwrite("flicker_a1hz", &NoiseSpec::flicker_a1hz)
        .def_readwrite("seed", &NoiseSpec::seed);

    py::class_<BiquadSection>(m, "BiquadSection")
        .def_readonly("b0", &BiquadSection::b0)
        .def_readonly("b1", &BiquadSection::b1)
        .def_readonly("b2", &BiquadSection::b2)
        .def_readonly("a1", &BiquadSection::a1)
        .def_readonly("a2", &BiquadSection::a2)
        .def("stable", &BiquadSection::stable);

    py::class_<FilterStages>(m, "FilterStages")
        .def_readonly("sections", &FilterStages::sections)
        .def_readonly("cutoff_hz", &FilterStages::cutoff_hz)
        .def_readonly("sample_rate_hz", &FilterStages::sample_rate_hz)
        .def_readonly("order", &FilterStages::order);

    m.def("sine", &sine, py::arg("sample_rate"), py::arg("n"), py::arg("amplitude"),
          py::arg("freq"), py::arg("phase") = 0.0);
    m.def("white_noise", &white_noise, py::arg("sample_rate"), py::arg("n"), py::arg("density"),
          py::arg("seed"));
    m.def("flicker_noise", &flicker_noise, py::arg("sample_rate"), py::arg("n"), py::arg("a1hz"),
          py::arg("seed"));
    m.def("noise_waveform", &noise_waveform, py::arg("sample_rate"), py::arg("n"),
          py::arg("spec"));
    m.def("estimate_psd", &estimate_psd, py::arg("waveform"), py::arg("segment_len"),
          py::arg("overlap_fraction") = 0.5);
    m.def("psd_loglog_slope", &psd_loglog_slope, py::arg("spectrum"), py::arg("f_lo"),
          py::arg("f_hi"));
    m.def("design_lowpass_4th", &design_lowpass_4th, py::arg("cutoff"), py::arg("sample_rate"));
    m.def("filter_apply", &filter_apply, py::arg("stages"), py::arg("waveform"));
    m.def("frequency_response",
          [](const FilterStages& stages, double f) { return std::abs(frequency_response(stages, f)); },
          py::arg("stages"), py::arg("freq"), "Magnitude of the cascade response at freq.");

    py::class_<HumiditySensorModel>(m, "HumiditySensorModel")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("c_at_0rh"), py::arg("c_at_100rh"))
        .def_readwrite("c_at_0rh", &HumiditySensorModel::c_at_0rh)
        .def_readwrite("c_at_100rh", &HumiditySensorModel::c_at_100rh);

    py::class_<AccelHalfBridge>(m, "AccelHalfBridge")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("c_rest"), py::arg("sensitivity"))
        .def_readwrite("c_rest", &AccelHalfBridge::c_rest)
        .def_readwrite("sensitivity", &AccelHalfBridge::sensitivity);

    m.def("humidity_capacitance", &humidity_capacitance, py::arg("model"), py::arg("rh_percent"));
    m.def("halfbridge_capacitances", &halfbridge_capacitances, py::arg("model"),
          py::arg("accel_g"));

    py::class_<CfcConfig>(m, "CfcConfig")
        .def(py::init<>())
        .def_readwrite("v_supply", &CfcConfig::v_supply)
        .def_readwrite("charge_current", &CfcConfig::charge_current)
        .def_readwrite("c_parallel", &CfcConfig::c_parallel)
        .def_readwrite("gate_time", &CfcConfig::gate_time)
        .def_readwrite("threshold_low_fraction", &CfcConfig::threshold_low_fraction)
        .def_readwrite("threshold_high_fraction", &CfcConfig::threshold_high_fraction);

    py::class_<CfcResult>(m, "CfcResult")
        .def_readonly("cycle_times", &CfcResult::cycle_times)
        .def_readonly("charge_times", &CfcResult::charge_times)
        .def_readonly("discharge_times", &CfcResult::discharge_times)
        .def_readonly("mean_frequency", &CfcResult::mean_frequency)
        .def_readonly("counted_frequency", &CfcResult::counted_frequency)
        .def_readonly("count", &CfcResult::count);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("capacitance", &SweepRow::capacitance)
        .def_readonly("cycle_time", &SweepRow::cycle_time)
        .def_readonly("frequency", &SweepRow::frequency);

    m.def("cycle_time_analytic", &cycle_time_analytic, py::arg("cfg"), py::arg("c_sense"));
    m.def("simulate_transient", &simulate_transient, py::arg("cfg"), py::arg("c_sense"),
          py::arg("noise"), py::arg("dt"), py::arg("n_cycles"));
    m.def("count_cycles", &count_cycles, py::arg("cycle_times"), py::arg("gate_time"));
    m.def("sweep_transfer", &sweep_transfer, py::arg("cfg"), py::arg("c_values"));

    py::class_<ChopperConfig>(m, "ChopperConfig")
        .def(py::init<>())
        .def_readwrite("v_carrier", &ChopperConfig::v_carrier)
        .def_readwrite("f_carrier", &ChopperConfig::f_carrier)
        .def_readwrite("c_integrate", &ChopperConfig::c_integrate)
        .def_readwrite("instr_gain", &ChopperConfig::instr_gain)
        .def_readwrite("demod_scale", &ChopperConfig::demod_scale)
        .def_readwrite("lpf_cutoff", &ChopperConfig::lpf_cutoff)
        .def_readwrite("sample_rate", &ChopperConfig::sample_rate)
        .def_readwrite("duration", &ChopperConfig::duration)
        .def_readwrite("settle_fraction", &ChopperConfig::settle_fraction)
        .def_readwrite("c_parasitic_plus", &ChopperConfig::c_parasitic_plus)
        .def_readwrite("c_parasitic_minus", &ChopperConfig::c_parasitic_minus);

    py::class_<ChopperResult>(m, "ChopperResult")
        .def_readonly("v_y", &ChopperResult::v_y)
        .def_readonly("v_z", &ChopperResult::v_z)
        .def_readonly("v_out", &ChopperResult::v_out)
        .def_readonly("dc_out", &ChopperResult::dc_out)
        .def_readonly("expected_dc", &ChopperResult::expected_dc);

    m.def("charge_amp", &charge_amp, py::arg("carrier"), py::arg("c_plus"), py::arg("c_minus"),
          py::arg("c_integrate"));
    m.def("instr_amp", &instr_amp, py::arg("v_y_plus"), py::arg("v_y_minus"), py::arg("gain"));
    m.def("demodulate", &demodulate, py::arg("v_y"), py::arg("carrier"), py::arg("demod_scale"));
    m.def("dc_estimate", &dc_estimate, py::arg("waveform"), py::arg("settle_fraction"));
    m.def("run_chain", &run_chain, py::arg("cfg"), py::arg("bridge"), py::arg("accel_g"),
          py::arg("noise"));
    m.def("run_chain_profile", &run_chain_profile, py::arg("cfg"), py::arg("bridge"),
          py::arg("accel_profile_g"), py::arg("noise"));
    m.def("flicker_suppression_metric", &flicker_suppression_metric, py::arg("cfg"),
          py::arg("bridge"), py::arg("accel_g"), py::arg("noise"));

    py::class_<MonteCarloSpec>(m, "MonteCarloSpec")
        .def(py::init<>())
        .def_readwrite("n_samples", &MonteCarloSpec::n_samples)
        .def_readwrite("rel_spread_sensitivity", &MonteCarloSpec::rel_spread_sensitivity)
        .def_readwrite("rel_spread_c_rest", &MonteCarloSpec::rel_spread_c_rest)
        .def_readwrite("noise", &MonteCarloSpec::noise)
        .def_readwrite("master_seed", &MonteCarloSpec::master_seed);

    py::class_<SampleStats>(m, "SampleStats")
        .def_readonly("mean", &SampleStats::mean)
        .def_readonly("std_dev", &SampleStats::std_dev)
        .def_readonly("cv", &SampleStats::cv)
        .def_readonly("per_sample", &SampleStats::per_sample);

    py::class_<InterfaceRow>(m, "InterfaceRow")
        .def_readonly("name", &InterfaceRow::name)
        .def_readonly("capacitance_range_low", &InterfaceRow::capacitance_range_low)
        .def_readonly("capacitance_range_high", &InterfaceRow::capacitance_range_high)
        .def_readonly("smallest_resolvable_dc", &InterfaceRow::smallest_resolvable_dc)
        .def_readonly("linearity_r2", &InterfaceRow::linearity_r2)
        .def_readonly("stage_count", &InterfaceRow::stage_count)
        .def_readonly("noise_robustness_db", &InterfaceRow::noise_robustness_db);

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("cfc", &ComparisonReport::cfc)
        .def_readonly("chopper", &ComparisonReport::chopper);

    py::class_<CompareSpec>(m, "CompareSpec")
        .def(py::init<>())
        .def_readwrite("c_low", &CompareSpec::c_low)
        .def_readwrite("c_high", &CompareSpec::c_high)
        .def_readwrite("n_points", &CompareSpec::n_points)
        .def_readwrite("bridge", &CompareSpec::bridge)
        .def_readwrite("noise", &CompareSpec::noise);

    m.def("stats", &stats, py::arg("values"));
    m.def("format_stats_mv", &format_stats_mv, py::arg("stats"));
    m.def("montecarlo_chopper", &montecarlo_chopper, py::arg("cfg"), py::arg("bridge"),
          py::arg("accel_g"), py::arg("spec"));
    m.def("compare_interfaces", &compare_interfaces, py::arg("cfc_cfg"), py::arg("chopper_cfg"),
          py::arg("spec"));
    m.def("log_spaced", &log_spaced, py::arg("lo"), py::arg("hi"), py::arg("n"));
}
