#pragma once

#include <utility>

namespace capsim {

/// Humidity-dependent monolithic capacitor, linear in relative humidity.
struct HumiditySensorModel {
    double c_at_0rh = 180e-12;   // farads
    double c_at_100rh = 500e-12; // farads
};

/// Differential comb-drive half-bridge.
struct AccelHalfBridge {
    double c_rest = 7.048e-12;     // farads at zero acceleration
    double sensitivity = 61.84e-15;  // farads per g
};

/// C(rh) = c_at_0rh + (rh/100)*(c_at_100rh - c_at_0rh); rh in [0, 100] percent.
double humidity_capacitance(const HumiditySensorModel& model, double rh_percent);

/// (c_rest + s*accel, c_rest - s*accel); rejects over-range deflection.
std::pair<double, double> halfbridge_capacitances(const AccelHalfBridge& model, double accel_g);

}  // namespace capsim
