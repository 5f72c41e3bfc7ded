#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modeconv/constants.hpp"
#include "modeconv/device.hpp"
#include "modeconv/tf_analysis.hpp"

namespace modeconv {

// Quadrature spectral density emitted by a load resistor at temperature T_L,
// in quanta: S_L = (1/2) coth(hbar w / (2 kB T_L)).  The T -> 0 limit is 1/2
// (vacuum); the classical limit is kB T / (hbar w).
inline double load_spectral_density(double T_L, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("load_spectral_density: omega must be > 0");
    if (T_L <= 0.0) return 0.5;
    double x = hbar * omega / (2.0 * k_boltz * T_L);
    return 0.5 / std::tanh(x);
}

// Receiver output spectral density, (uV)^2/Hz: S_out = G ((1-zeta)/2 + zeta S_L).
inline double receiver_output(double S_L, const ReceiverCal& cal) {
    if (!cal.valid()) throw std::invalid_argument("receiver_output: invalid calibration");
    return cal.gain * (0.5 * (1.0 - cal.efficiency) + cal.efficiency * S_L);
}

struct CalibrationFit {
    ReceiverCal cal;
    double residual_rms = 0.0; // (uV)^2/Hz
    int iterations = 0;
};

// Two-parameter Gauss-Newton fit of (G, zeta) to S_out(T_L) samples.
// Initialization: G*zeta from the high-temperature slope, G*(1-zeta) from
// the extrapolated zero-temperature intercept of that line.
inline CalibrationFit fit_calibration(std::span<const std::pair<double, double>> samples,
                                      double omega) {
    if (samples.size() < 3)
        throw std::invalid_argument("fit_calibration: need at least 3 temperature points");
    double tmin = samples[0].first, tmax = samples[0].first;
    for (const auto& s : samples) {
        tmin = std::min(tmin, s.first);
        tmax = std::max(tmax, s.first);
    }
    if (!(tmax > tmin))
        throw std::invalid_argument("fit_calibration: degenerate data, all T_L equal");

    // straight-line fit S ~ slope*T + icpt over the upper half of the range
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int nl = 0;
    for (const auto& s : samples) {
        if (s.first < 0.5 * (tmin + tmax)) continue;
        sx += s.first;
        sy += s.second;
        sxx += s.first * s.first;
        sxy += s.first * s.second;
        ++nl;
    }
    double det = nl * sxx - sx * sx;
    double slope = det != 0.0 ? (nl * sxy - sx * sy) / det : 0.0;
    double icpt = nl > 0 ? (sy - slope * sx) / nl : 0.0;
    double gz = slope * hbar * omega / k_boltz; // G*zeta
    double gom = 2.0 * icpt;                    // G*(1-zeta)
    double G = std::max(gz + gom, 1e-12);
    double zeta = std::clamp(gz / G, 1e-6, 1.0 - 1e-6);

    int it = 0;
    for (; it < 50; ++it) {
        double jgg = 0, jgz = 0, jzz = 0, rg = 0, rz = 0;
        for (const auto& s : samples) {
            double sl = load_spectral_density(s.first, omega);
            double model = G * (0.5 * (1.0 - zeta) + zeta * sl);
            double r = s.second - model;
            double dG = 0.5 * (1.0 - zeta) + zeta * sl; // d model / d G
            double dz = G * (sl - 0.5);                 // d model / d zeta
            jgg += dG * dG;
            jgz += dG * dz;
            jzz += dz * dz;
            rg += dG * r;
            rz += dz * r;
        }
        double d = jgg * jzz - jgz * jgz;
        if (d == 0.0) throw std::runtime_error("fit_calibration: singular normal equations");
        double stepG = (jzz * rg - jgz * rz) / d;
        double stepZ = (jgg * rz - jgz * rg) / d;
        G += stepG;
        zeta += stepZ;
        if (std::abs(stepG) <= 1e-14 * std::abs(G) && std::abs(stepZ) <= 1e-14)
            break;
    }

    CalibrationFit fit;
    fit.cal = ReceiverCal{G, zeta, omega};
    fit.iterations = it + 1;
    double ss = 0.0;
    for (const auto& s : samples) {
        double r = s.second - receiver_output(load_spectral_density(s.first, omega), fit.cal);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(samples.size()));
    return fit;
}

// Matched-filter quadrature amplitudes at frequency omega, sqrt(quanta) at
// the receiver input:
//   X1 = sqrt(2/(zeta G)) sqrt(dt/C) sum_k f(k) y(k) cos(w t_k),  C = sum f^2
// and X2 with sin.  An empty window means the rectangular one (C = N).
struct QuadraturePair {
    double x1 = 0.0;
    double x2 = 0.0;
    double quanta() const { return x1 * x1 + x2 * x2; }
};

inline QuadraturePair quadratures(const VoltageTrace& trace, double omega,
                                  std::span<const double> window, const ReceiverCal& cal,
                                  bool phase_preserving = false) {
    if (!cal.valid()) throw std::invalid_argument("quadratures: invalid calibration");
    const std::size_t n = trace.samples.size();
    if (!window.empty() && window.size() != n)
        throw std::invalid_argument("quadratures: window not sampled on the trace grid");

    double C = 0.0;
    if (window.empty()) {
        C = static_cast<double>(n);
    } else {
        for (double f : window) C += f * f;
    }
    if (!(C > 0.0)) throw std::invalid_argument("quadratures: zero window");

    double zeta = phase_preserving ? 0.5 * cal.efficiency : cal.efficiency;
    if (!(zeta > 0.0)) throw std::invalid_argument("quadratures: zero efficiency");
    const double pref = std::sqrt(2.0 / (zeta * cal.gain)) * std::sqrt(trace.dt / C);

    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double t = trace.t0 + static_cast<double>(k) * trace.dt;
        double f = window.empty() ? 1.0 : window[k];
        double y = f * trace.samples[k];
        s1 += y * std::cos(omega * t);
        s2 += y * std::sin(omega * t);
    }
    return {pref * s1, pref * s2};
}

// Added-noise statistics: total quadrature variance of a signal ensemble
// minus the same statistic for measured vacuum, in quanta.  The standard
// error uses the Gaussian-sample formula stderr(Var) = Var sqrt(2/(n-1)).
struct NoiseReport {
    double var_sum = 0.0;
    double vacuum_reference = 0.0;
    double added_noise = 0.0;
    double stderr_ = 0.0;
};

namespace detail {

struct VarPair {
    double v1, v2;
    std::size_t n;
};

inline VarPair variance_pair(std::span<const QuadraturePair> ens) {
    double m1 = 0, m2 = 0;
    for (const auto& q : ens) {
        m1 += q.x1;
        m2 += q.x2;
    }
    auto n = static_cast<double>(ens.size());
    m1 /= n;
    m2 /= n;
    double v1 = 0, v2 = 0;
    for (const auto& q : ens) {
        v1 += (q.x1 - m1) * (q.x1 - m1);
        v2 += (q.x2 - m2) * (q.x2 - m2);
    }
    return {v1 / (n - 1.0), v2 / (n - 1.0), ens.size()};
}

inline double var_stderr_sq(const VarPair& v) {
    double f = 2.0 / (static_cast<double>(v.n) - 1.0);
    return f * (v.v1 * v.v1 + v.v2 * v.v2);
}

} // namespace detail

inline NoiseReport added_noise(std::span<const QuadraturePair> ensemble,
                               std::span<const QuadraturePair> vacuum) {
    if (ensemble.size() < 2 || vacuum.size() < 2)
        throw std::invalid_argument("added_noise: ensembles need at least 2 entries");
    auto vs = detail::variance_pair(ensemble);
    auto vv = detail::variance_pair(vacuum);
    NoiseReport rep;
    rep.var_sum = vs.v1 + vs.v2;
    rep.vacuum_reference = vv.v1 + vv.v2;
    rep.added_noise = rep.var_sum - rep.vacuum_reference;
    rep.stderr_ = std::sqrt(detail::var_stderr_sq(vs) + detail::var_stderr_sq(vv));
    return rep;
}

// Motional-sideband to pump power ratio for thermometry:
//   P_m/P_c = (g0^2/2) (<x^2>/x_zp^2) ke^2 / [(D^2+(ke-k/2)^2)((D+wm)^2+(k/2)^2)]
// with <x^2> = 2 x_zp^2 n_m for a thermalized oscillator.
inline double sideband_ratio(const DeviceParams& p, double n_m, double delta) {
    double ke = p.kappa_ext;
    double d1 = delta * delta + (ke - 0.5 * p.kappa) * (ke - 0.5 * p.kappa);
    double d2 = (delta + p.omega_m) * (delta + p.omega_m) + 0.25 * p.kappa * p.kappa;
    return 0.5 * p.g0 * p.g0 * (2.0 * n_m) * ke * ke / (d1 * d2);
}

} // namespace modeconv
