#include "capsim/cfc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "capsim/signal.hpp"

namespace capsim {

void CfcConfig::validate() const {
    if (v_supply <= 0.0) throw std::invalid_argument("CfcConfig: v_supply must be > 0");
    if (charge_current <= 0.0) throw std::invalid_argument("CfcConfig: charge_current must be > 0");
    if (c_parallel < 0.0) throw std::invalid_argument("CfcConfig: c_parallel must be >= 0");
    if (gate_time <= 0.0) throw std::invalid_argument("CfcConfig: gate_time must be > 0");
    if (!(threshold_low_fraction > 0.0 && threshold_low_fraction < threshold_high_fraction &&
          threshold_high_fraction < 1.0))
        throw std::invalid_argument("CfcConfig: thresholds must satisfy 0 < low < high < 1");
}

double cycle_time_analytic(const CfcConfig& cfg, double c_sense) {
    cfg.validate();
    if (c_sense < 0.0) throw std::invalid_argument("cycle_time_analytic: c_sense must be >= 0");
    const double span = cfg.threshold_high_fraction - cfg.threshold_low_fraction;
    return 2.0 * span * cfg.v_supply / cfg.charge_current * (cfg.c_parallel + c_sense);
}

namespace {

// Noise samples at rate 1/dt, regenerated at doubled length on exhaustion so
// the result stays a pure function of (spec, dt).
class NoiseStream {
  public:
    NoiseStream(const NoiseSpec& spec, double dt, std::size_t initial_len)
        : spec_(spec), dt_(dt) {
        if (!spec_.silent()) regenerate(std::max<std::size_t>(initial_len, 8192));
    }

    double at(std::size_t k) {
        if (spec_.silent()) return 0.0;
        while (k >= buffer_.samples.size()) regenerate(buffer_.samples.size() * 2);
        return buffer_.samples[k];
    }

  private:
    void regenerate(std::size_t len) { buffer_ = noise_waveform(1.0 / dt_, len, spec_); }

    NoiseSpec spec_;
    double dt_;
    Waveform buffer_;
};

}  // namespace

CfcResult simulate_transient(const CfcConfig& cfg, double c_sense, const NoiseSpec& noise,
                             double dt, std::size_t n_cycles) {
    cfg.validate();
    if (c_sense < 0.0) throw std::invalid_argument("simulate_transient: c_sense must be >= 0");
    if (n_cycles < 1) throw std::invalid_argument("simulate_transient: n_cycles must be >= 1");
    const double c_total = cfg.c_parallel + c_sense;
    if (c_total <= 0.0)
        throw std::invalid_argument("simulate_transient: total capacitance must be > 0");
    const double t_analytic = cycle_time_analytic(cfg, c_sense);
    if (dt <= 0.0 || dt > t_analytic / 200.0)
        throw std::invalid_argument("simulate_transient: dt must be <= T_analytic/200");

    const double slope = cfg.charge_current / c_total;  // V/s
    const double v_low = cfg.threshold_low_fraction * cfg.v_supply;
    const double v_high = cfg.threshold_high_fraction * cfg.v_supply;

    const std::size_t expected_len =
        static_cast<std::size_t>(std::ceil((static_cast<double>(n_cycles) + 2.0) * 2.0 *
                                           t_analytic / dt));
    NoiseStream stream(noise, dt, expected_len);

    CfcResult result;
    result.cycle_times.reserve(n_cycles);

    double v = v_low;       // true capacitor voltage at sample k
    double dir = 1.0;       // +1 charging, -1 discharging
    double cycle_start = 0.0;
    double last_crossing = 0.0;
    std::size_t k = 0;
    while (result.cycle_times.size() < n_cycles) {
        const double t = static_cast<double>(k) * dt;
        if (t - last_crossing > 10.0 * t_analytic)
            throw std::runtime_error("simulate_transient: comparator stalled (noise too large)");

        const double v_next = v + dir * slope * dt;
        const double y = v + stream.at(k);
        const double y_next = v_next + stream.at(k + 1);
        const double thr = dir > 0.0 ? v_high : v_low;
        const bool crossed = dir > 0.0 ? (y < thr && y_next >= thr) : (y > thr && y_next <= thr);
        if (crossed) {
            const double alpha = (thr - y) / (y_next - y);
            const double t_cross = t + alpha * dt;
            last_crossing = t_cross;
            if (dir > 0.0) {
                result.charge_times.push_back(t_cross - cycle_start);
            } else {
                // Down-crossing of the low threshold completes a cycle.
                result.cycle_times.push_back(t_cross - cycle_start);
                result.discharge_times.push_back(result.cycle_times.back() -
                                                 result.charge_times.back());
                cycle_start = t_cross;
            }
            // Ramp continues from the threshold in the opposite direction.
            dir = -dir;
            v = thr + dir * slope * (1.0 - alpha) * dt;
        } else {
            v = v_next;
        }
        ++k;
    }

    double sum = 0.0;
    for (double ct : result.cycle_times) sum += ct;
    result.mean_frequency = static_cast<double>(result.cycle_times.size()) / sum;
    const auto [count, counted] = count_cycles(result.cycle_times, cfg.gate_time);
    result.count = count;
    result.counted_frequency = counted;
    return result;
}

std::pair<long long, double> count_cycles(const std::vector<double>& cycle_times,
                                          double gate_time) {
    if (gate_time <= 0.0) throw std::invalid_argument("count_cycles: gate_time must be > 0");
    if (cycle_times.empty()) throw std::invalid_argument("count_cycles: empty cycle stream");
    long long count = 0;
    double t = 0.0;
    // Relative epsilon keeps exact-division gates exact despite summation
    // rounding.
    const double limit = gate_time * (1.0 + 1e-12);
    for (double ct : cycle_times) {
        t += ct;
        if (t > limit) break;
        ++count;
    }
    return {count, static_cast<double>(count) / gate_time};
}

std::vector<SweepRow> sweep_transfer(const CfcConfig& cfg, const std::vector<double>& c_values) {
    cfg.validate();
    std::vector<SweepRow> rows;
    rows.reserve(c_values.size());
    for (double c : c_values) {
        const double t = cycle_time_analytic(cfg, c);
        rows.push_back({c, t, t > 0.0 ? 1.0 / t : 0.0});
    }
    return rows;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need matching lengths >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace capsim
