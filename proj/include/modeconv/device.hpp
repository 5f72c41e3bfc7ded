#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "modeconv/constants.hpp"

namespace modeconv {

// Physical constants of the electromechanical converter.  All rates and
// frequencies angular (rad/s), lengths in meters.
struct DeviceParams {
    double omega_e   = from_hz(7.34e9);   // circuit resonance at V_dc = 0
    double kappa     = from_hz(2.5e6);    // total circuit energy decay
    double kappa_ext = 0.92 * from_hz(2.5e6); // decay into the transmission line
    double omega_m   = from_hz(9.56e6);   // mechanical resonance at V_dc = 0
    double kappa_m   = from_hz(25.0);     // mechanical energy decay
    double n_m       = 36.0;              // thermal phonon occupancy
    double g0        = from_hz(270.0);    // vacuum electromechanical coupling
    double G_disp    = from_hz(42e6) / 1e-9; // frequency pull per displacement, rad/(s m)
    double x_zp      = 6.4e-15;           // zero-point motion, m
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

// Cross-parameter consistency checks.  Report-style: returns the list of
// violated invariants, never throws.
inline ValidationReport validate(const DeviceParams& p) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    if (!(p.kappa >= 0.0)) fail("kappa must be >= 0");
    if (!(p.kappa_ext >= 0.0)) fail("kappa_ext must be >= 0");
    if (p.kappa_ext > p.kappa) fail("kappa_ext <= kappa violated");
    if (!(p.kappa_m >= 0.0)) fail("kappa_m must be >= 0");
    if (!(p.omega_e >= 0.0)) fail("omega_e must be >= 0");
    if (!(p.omega_m >= 0.0)) fail("omega_m must be >= 0");
    if (!(p.n_m >= 0.0)) fail("n_m must be >= 0");
    if (!(p.g0 >= 0.0)) fail("g0 must be >= 0");
    if (!(p.x_zp >= 0.0)) fail("x_zp must be >= 0");

    // g0 = G x_zp to within 5%; the published numbers are rounded
    // (42 MHz/nm x 6.4 fm = 268.8 Hz vs the quoted 270 Hz).
    if (p.g0 > 0.0) {
        double rel = std::abs(p.g0 - p.G_disp * p.x_zp) / p.g0;
        if (rel > 0.05) fail("g0 inconsistent with G_disp*x_zp (>5%)");
    }

    // Resolved-sideband condition for the reduced model.
    if (!(4.0 * p.omega_m > p.kappa)) fail("resolved-sideband condition 4*omega_m > kappa violated");

    return rep;
}

// eta = kappa_ext / kappa, the coupling efficiency of the circuit.
inline double eta(const DeviceParams& p) {
    if (p.kappa == 0.0) throw std::domain_error("eta undefined for kappa = 0");
    return p.kappa_ext / p.kappa;
}

// Calibrated microwave receiver at one operating frequency: gain in
// (uV)^2/(Hz quanta), efficiency dimensionless in [0,1].
struct ReceiverCal {
    double gain = 1.0;
    double efficiency = 1.0;
    double frequency = 0.0; // rad/s

    bool valid() const {
        return gain > 0.0 && efficiency >= 0.0 && efficiency <= 1.0;
    }
};

// Published receiver operating points.
inline ReceiverCal receiver_jpa_low()  { return {5.0, 0.49, from_hz(7.07825e9)}; }
inline ReceiverCal receiver_jpa_high() { return {11.0, 0.60, from_hz(7.34135e9)}; }
inline ReceiverCal receiver_nojpa_low()  { return {0.705, 0.0105, from_hz(7.07825e9)}; }
inline ReceiverCal receiver_nojpa_high() { return {0.98, 0.0125, from_hz(7.34135e9)}; }

} // namespace modeconv
