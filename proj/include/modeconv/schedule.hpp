#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modeconv/device.hpp"
#include "modeconv/envelope.hpp"
#include "modeconv/grid.hpp"

namespace modeconv {

// Pump-controlled exchange rate Gamma(t) = 4|g|^2/kappa sampled on a uniform
// grid, plus the constant pump phase psi = Arg(-i g) for the leg.
struct CouplingSchedule {
    SampleGrid grid;
    std::vector<double> gamma; // rad/s, >= 0
    double phase_psi = 0.0;
    std::vector<std::string> warnings;

    double max_gamma() const {
        double m = 0.0;
        for (double g : gamma) m = std::max(m, g);
        return m;
    }

    // Trapezoidal coupling budget, integral of Gamma dt.
    double budget() const {
        if (gamma.size() < 2) return 0.0;
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < gamma.size(); ++k)
            s += gamma[k] + gamma[k + 1];
        return 0.5 * s * grid.dt;
    }
};

// The conversion bandwidth is limited by the circuit to Gamma < kappa/2.
// Attached as a warning, not an error, so the infeasible regime stays
// explorable.
inline void attach_feasibility(CouplingSchedule& s, std::optional<double> kappa) {
    if (!kappa) return;
    double limit = 0.5 * *kappa;
    double m = s.max_gamma();
    if (m >= limit)
        s.warnings.push_back("schedule exceeds bandwidth bound kappa/2: max Gamma = " +
                             std::to_string(m) + " rad/s, kappa/2 = " + std::to_string(limit));
}

// Optimal capture coupling for an arbitrary input envelope:
//   Gamma(t) = e^{kappa_m t} |a_in(t)|^2
//              / ( |a_in(0)|^2/Gamma(0) + \int_0^t e^{kappa_m t'} |a_in(t')|^2 dt' )
// with the cumulative integral evaluated by the trapezoidal rule on the
// sample grid.  Gamma(0) is caller-prescribed; time is measured from the
// first sample.
inline CouplingSchedule optimal_capture(const Envelope& env, double gamma0, double kappa_m,
                                        std::optional<double> kappa = std::nullopt) {
    if (!(gamma0 > 0.0)) throw std::invalid_argument("optimal_capture: gamma0 must be > 0");
    if (env.values.size() < 2) throw std::invalid_argument("optimal_capture: envelope too short");

    const std::size_t n = env.values.size();
    std::vector<double> w(n); // e^{kappa_m t} |a_in|^2
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        double tk = static_cast<double>(k) * env.grid.dt;
        w[k] = std::exp(kappa_m * tk) * std::norm(env.values[k]);
        any = any || w[k] > 0.0;
    }
    if (!any) throw std::domain_error("optimal_capture: all-zero envelope");

    CouplingSchedule sched;
    sched.grid = env.grid;
    sched.gamma.resize(n);
    const double head = std::norm(env.values[0]) / gamma0;
    double integral = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) integral += 0.5 * (w[k - 1] + w[k]) * env.grid.dt;
        double denom = head + integral;
        sched.gamma[k] = (denom > 0.0) ? w[k] / denom : 0.0;
    }
    attach_feasibility(sched, kappa);
    return sched;
}

// Closed-form capture schedule for an exponentially decaying input,
// Gamma(t) = Theta(t) gamma e^{-gamma t} / (1 - e^{-gamma t} + gamma/Gamma(0)).
// The Heaviside onset is sampled right-continuously: Gamma(t0) = Gamma(0).
inline CouplingSchedule exp_capture_schedule(double gamma, double gamma0, SampleGrid grid,
                                             std::optional<double> kappa = std::nullopt) {
    if (!(gamma > 0.0) || !(gamma0 > 0.0))
        throw std::invalid_argument("exp_capture_schedule: gamma and gamma0 must be > 0");
    CouplingSchedule sched;
    sched.grid = grid;
    sched.gamma.resize(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        double t = static_cast<double>(k) * grid.dt;
        double e = std::exp(-gamma * t);
        sched.gamma[k] = gamma * e / (1.0 - e + gamma / gamma0);
    }
    attach_feasibility(sched, kappa);
    return sched;
}

// Release schedule emitting a Gaussian envelope centered at t_center
// (relative to the grid start):
//   Gamma(t) = gamma e^{-gamma^2 (t-t_o)^2} / (1 - erf(gamma (t-t_o)) + delta),
//   delta = gamma/Gamma(0) e^{-gamma^2 t_o^2}.
inline CouplingSchedule gauss_release_schedule(double gamma, double t_center, double gamma0,
                                               SampleGrid grid,
                                               std::optional<double> kappa = std::nullopt) {
    if (!(gamma > 0.0) || !(gamma0 > 0.0))
        throw std::invalid_argument("gauss_release_schedule: gamma and gamma0 must be > 0");
    const double delta = gamma / gamma0 * std::exp(-(gamma * t_center) * (gamma * t_center));
    CouplingSchedule sched;
    sched.grid = grid;
    sched.gamma.resize(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        double x = gamma * (static_cast<double>(k) * grid.dt - t_center);
        sched.gamma[k] = gamma * std::exp(-x * x) / (1.0 - std::erf(x) + delta);
    }
    attach_feasibility(sched, kappa);
    return sched;
}

// Pump strength as induced photon number, n(t) = Gamma(t) kappa / (4 g0^2).
struct PumpProgram {
    SampleGrid grid;
    std::vector<double> photons;
};

inline PumpProgram schedule_to_pump(const CouplingSchedule& sched, const DeviceParams& p) {
    if (p.g0 <= 0.0) throw std::domain_error("schedule_to_pump: g0 must be > 0");
    PumpProgram pump;
    pump.grid = sched.grid;
    pump.photons.resize(sched.gamma.size());
    const double f = p.kappa / (4.0 * p.g0 * p.g0);
    for (std::size_t k = 0; k < sched.gamma.size(); ++k)
        pump.photons[k] = sched.gamma[k] * f;
    return pump;
}

inline CouplingSchedule pump_to_schedule(const PumpProgram& pump, const DeviceParams& p,
                                         double psi = 0.0) {
    if (p.kappa <= 0.0) throw std::domain_error("pump_to_schedule: kappa must be > 0");
    CouplingSchedule sched;
    sched.grid = pump.grid;
    sched.phase_psi = psi;
    sched.gamma.resize(pump.photons.size());
    const double f = 4.0 * p.g0 * p.g0 / p.kappa;
    for (std::size_t k = 0; k < pump.photons.size(); ++k)
        sched.gamma[k] = pump.photons[k] * f;
    return sched;
}

} // namespace modeconv
