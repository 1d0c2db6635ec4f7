#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capsim/cfc.hpp"
#include "capsim/chopper.hpp"
#include "capsim/sensors.hpp"

namespace capsim {

/// Monte Carlo over device spread, Gaussian relative perturbations.
struct MonteCarloSpec {
    int n_samples = 100;
    double rel_spread_sensitivity = 0.0;  // CV of bridge sensitivity
    double rel_spread_c_rest = 0.0;       // CV of rest capacitance
    NoiseSpec noise;
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct SampleStats {
    double mean = 0.0;
    double std_dev = 0.0;  // (n-1) divisor
    double cv = 0.0;       // std/|mean|, 0 when mean == 0
    std::vector<double> per_sample;
};

struct InterfaceRow {
    std::string name;
    double capacitance_range_low = 0.0;   // farads
    double capacitance_range_high = 0.0;  // farads
    double smallest_resolvable_dc = 0.0;  // farads
    double linearity_r2 = 0.0;
    int stage_count = 0;
    std::optional<double> noise_robustness_db;
};

struct ComparisonReport {
    InterfaceRow cfc;
    InterfaceRow chopper;
};

/// Shared protocol parameters for the interface comparison.
struct CompareSpec {
    double c_low = 18e-12;   // farads, sweep range
    double c_high = 1e-9;
    int n_points = 20;
    AccelHalfBridge bridge;
    NoiseSpec noise;  // used for the chopper noise floor and suppression metric

    void validate() const;
};

SampleStats stats(const std::vector<double>& values);

/// "58.44 mV, 2.79 mV (4.77 %)" style report line.
std::string format_stats_mv(const SampleStats& s);

/// Per-sample seeds derived as (master_seed, sample index); aggregation is
/// order-insensitive.
SampleStats montecarlo_chopper(const ChopperConfig& cfg, const AccelHalfBridge& bridge,
                               double accel_g, const MonteCarloSpec& spec);

ComparisonReport compare_interfaces(const CfcConfig& cfc_cfg, const ChopperConfig& ch_cfg,
                                    const CompareSpec& spec);

std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace capsim
