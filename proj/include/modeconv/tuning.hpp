#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modeconv/constants.hpp"
#include "modeconv/device.hpp"

namespace modeconv {

// Lumped 1-D model of the drumhead: a linear spring against the electrostatic
// pull of the actuation electrode and the Casimir attraction of the capacitor
// gap.  Deflection x is measured from the relaxed spring position; gaps are
// the values at x = 0.  A_act, A_cap and the spring constant are calibration
// inputs standing in for the device geometry.
struct TuningModel {
    double k_spring = 0.0;       // N/m
    double m_eff = 0.0;          // kg, = k_spring / omega_m^2
    double d_cap0 = 40e-9;       // m, capacitor gap
    double d_act0 = 120e-9;      // m, actuation gap
    double A_act = 2.1e-11;      // m^2
    double A_cap = pi * 7.5e-6 * 7.5e-6; // m^2
    double casimir_scale = 0.7;
    double patch_voltage = 0.0;  // V, constant offset
    double c_ratio = 0.65;       // C_m/(C_p+C_m) at the V=0 equilibrium

    // Defaults chosen so that the V=0 anchors (omega_e, omega_m, 40 nm gap)
    // hold and V ~ 10 V lands near 7.08 GHz.
    static TuningModel calibrated(const DeviceParams& p, double m_eff_ = 5e-14) {
        TuningModel m;
        m.m_eff = m_eff_;
        m.k_spring = m_eff_ * p.omega_m * p.omega_m;
        return m;
    }
};

// Casimir pressure magnitude between ideal plates, P = hbar c pi^2 / (240 d^4).
inline double casimir_pressure(double d) {
    if (!(d > 0.0)) throw std::domain_error("casimir_pressure: separation must be > 0");
    double d2 = d * d;
    return hbar * c_light * pi * pi / (240.0 * d2 * d2);
}

struct Equilibrium {
    double x = 0.0;
    bool pulled_in = false;
};

namespace detail {

inline double attractive_force(const TuningModel& m, double x, double V) {
    double veff = V + m.patch_voltage;
    double ga = m.d_act0 - x;
    double f = epsilon0 * m.A_act * veff * veff / (2.0 * ga * ga);
    if (m.casimir_scale > 0.0)
        f += m.casimir_scale * casimir_pressure(m.d_cap0 - x) * m.A_cap;
    return f;
}

inline double attractive_force_deriv(const TuningModel& m, double x, double V) {
    double veff = V + m.patch_voltage;
    double ga = m.d_act0 - x;
    double fp = epsilon0 * m.A_act * veff * veff / (ga * ga * ga);
    if (m.casimir_scale > 0.0) {
        double gc = m.d_cap0 - x;
        fp += 4.0 * m.casimir_scale * casimir_pressure(gc) * m.A_cap / gc;
    }
    return fp;
}

} // namespace detail

// Smallest stable root of k x = F_attr(x, V) found by a sign-change scan plus
// bisection, refined by Newton.  The first crossing from negative to positive
// residual k x - F is the stable branch (k - F' > 0 there).  No crossing on
// [0, min gap) means pull-in.
inline Equilibrium equilibrium_deflection(const TuningModel& m, double V) {
    if (V < 0.0) throw std::invalid_argument("equilibrium_deflection: V must be >= 0");
    const double xmax = std::min(m.d_act0, m.d_cap0) * (1.0 - 1e-6);
    auto resid = [&](double x) { return m.k_spring * x - detail::attractive_force(m, x, V); };

    if (resid(0.0) >= 0.0) return {0.0, false}; // no net attraction at rest

    const int scan = 4096;
    double lo = 0.0, hi = -1.0;
    double prev = resid(0.0);
    for (int i = 1; i <= scan; ++i) {
        double x = xmax * static_cast<double>(i) / scan;
        double r = resid(x);
        if (prev <= 0.0 && r > 0.0) {
            lo = xmax * static_cast<double>(i - 1) / scan;
            hi = x;
            break;
        }
        prev = r;
    }
    if (hi < 0.0) return {0.0, true}; // attraction wins everywhere: pull-in

    for (int i = 0; i < 200 && hi - lo > 1e-24; ++i) {
        double mid = 0.5 * (lo + hi);
        if (resid(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) { // Newton polish
        double d = m.k_spring - detail::attractive_force_deriv(m, x, V);
        if (d <= 0.0) break;
        double step = resid(x) / d;
        double xn = x - step;
        if (xn <= lo || xn >= hi) break;
        x = xn;
    }
    return {x, false};
}

// Circuit resonance vs bias.  Parallel-plate C_m scales with the inverse gap;
// the split between C_m and the parasitic C_p is fixed by c_ratio at the V=0
// equilibrium, and omega_e is normalized there so omega_e_of_V(0) returns the
// calibrated params.omega_e exactly (the Casimir deflection at zero bias is
// absorbed into the calibration).
inline std::optional<double> omega_e_of_V(const TuningModel& m, const DeviceParams& p, double V) {
    Equilibrium e0 = equilibrium_deflection(m, 0.0);
    if (e0.pulled_in) return std::nullopt;
    Equilibrium eq = equilibrium_deflection(m, V);
    if (eq.pulled_in) return std::nullopt;
    double cm = m.c_ratio * (m.d_cap0 - e0.x) / (m.d_cap0 - eq.x);
    double cp = 1.0 - m.c_ratio;
    return p.omega_e * std::sqrt(1.0 / (cp + cm));
}

// Mechanical resonance vs bias: omega_m = sqrt((k - F'(x*))/m_eff), clamped
// to zero at the pull-in boundary where the net stiffness crosses zero.
inline std::optional<double> omega_m_of_V(const TuningModel& m, const DeviceParams& p, double V) {
    (void)p;
    Equilibrium eq = equilibrium_deflection(m, V);
    if (eq.pulled_in) return std::nullopt;
    double keff = m.k_spring - detail::attractive_force_deriv(m, eq.x, V);
    if (keff <= 0.0) return 0.0;
    return std::sqrt(keff / m.m_eff);
}

struct TuningSweepRow {
    double V = 0.0;
    double x_star = 0.0;
    double omega_e = 0.0; // rad/s, 0 once pulled in
    double omega_m = 0.0; // rad/s, 0 once pulled in
    bool pulled_in = false;
};

inline std::vector<TuningSweepRow> tuning_sweep(const TuningModel& m, const DeviceParams& p,
                                                double v_min, double v_max, std::size_t n_points) {
    if (n_points < 2 || !(v_max > v_min))
        throw std::invalid_argument("tuning_sweep: bad sweep range");
    std::vector<TuningSweepRow> rows;
    rows.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        double V = v_min + (v_max - v_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        TuningSweepRow row;
        row.V = V;
        Equilibrium eq = equilibrium_deflection(m, V);
        row.pulled_in = eq.pulled_in;
        if (!eq.pulled_in) {
            row.x_star = eq.x;
            row.omega_e = omega_e_of_V(m, p, V).value_or(0.0);
            row.omega_m = omega_m_of_V(m, p, V).value_or(0.0);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace modeconv
