#include "capsim/sensors.hpp"

#include <cmath>
#include <stdexcept>

namespace capsim {

double humidity_capacitance(const HumiditySensorModel& model, double rh_percent) {
    if (!(model.c_at_0rh > 0.0) || !(model.c_at_100rh > model.c_at_0rh))
        throw std::invalid_argument("humidity_capacitance: need 0 < c_at_0rh < c_at_100rh");
    if (rh_percent < 0.0 || rh_percent > 100.0)
        throw std::invalid_argument("humidity_capacitance: rh must lie in [0, 100]");
    return model.c_at_0rh + (rh_percent / 100.0) * (model.c_at_100rh - model.c_at_0rh);
}

std::pair<double, double> halfbridge_capacitances(const AccelHalfBridge& model, double accel_g) {
    if (!(model.c_rest > 0.0) || !(model.sensitivity > 0.0))
        throw std::invalid_argument("halfbridge_capacitances: c_rest and sensitivity must be > 0");
    if (std::abs(accel_g) * model.sensitivity >= model.c_rest)
        throw std::invalid_argument("halfbridge_capacitances: acceleration over-range");
    const double delta = model.sensitivity * accel_g;
    return {model.c_rest + delta, model.c_rest - delta};
}

}  // namespace capsim
