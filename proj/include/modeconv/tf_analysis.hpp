#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "modeconv/device.hpp"
#include "modeconv/envelope.hpp"
#include "modeconv/fft.hpp"

namespace modeconv {

// Real sampled receiver voltage, microvolts.
struct VoltageTrace {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> samples;
};

struct ComplexTrace {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<cplx> samples;
};

// Real voltage at an intermediate frequency: V(t) = Re[v_env(t) e^{i w_if t}].
// With a receiver calibration the amplitude is scaled by sqrt(2 G zeta) so
// that a coherent envelope of N quanta carries N quanta at the receiver input
// (the gain is defined against a single-sided spectral density, hence the 2).
inline VoltageTrace synthesize_voltage(const Envelope& env, double omega_if, double sample_rate,
                                       const ReceiverCal* cal = nullptr,
                                       bool phase_preserving = false) {
    if (!(sample_rate > omega_if / pi))
        throw std::invalid_argument("synthesize_voltage: sample rate below Nyquist for the IF");
    if (env.values.size() < 2)
        throw std::invalid_argument("synthesize_voltage: envelope too short");

    double scale = 1.0;
    if (cal) {
        if (!cal->valid()) throw std::invalid_argument("synthesize_voltage: invalid calibration");
        double zeta = phase_preserving ? 0.5 * cal->efficiency : cal->efficiency;
        scale = std::sqrt(2.0 * cal->gain * zeta);
    }

    VoltageTrace trace;
    trace.t0 = env.grid.t0;
    trace.dt = 1.0 / sample_rate;
    auto n = static_cast<std::size_t>(std::floor(env.grid.duration() * sample_rate)) + 1;
    trace.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double t = trace.t0 + static_cast<double>(k) * trace.dt;
        cplx v = interp(env, t) * scale;
        trace.samples[k] = (v * std::polar(1.0, omega_if * t)).real();
    }
    return trace;
}

// Analytic signal v = V + i H(V) by the frequency-domain construction:
// forward transform, zero the negative-frequency bins, double the positive
// ones (DC and Nyquist unchanged), inverse transform.
inline ComplexTrace analytic_signal(const VoltageTrace& trace) {
    const std::size_t n = trace.samples.size();
    if (n < 2) throw std::invalid_argument("analytic_signal: need at least two samples");

    std::vector<cplx> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = cplx(trace.samples[k], 0.0);
    Fft plan(n);
    plan.forward(x);
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) x[k] *= 2.0;
    for (std::size_t k = half + 1; k < n; ++k) x[k] = {0.0, 0.0};
    plan.inverse(x);

    ComplexTrace out;
    out.t0 = trace.t0;
    out.dt = trace.dt;
    out.samples = std::move(x);
    return out;
}

// Discrete Wigner-Ville distribution on an N x N grid.  For each time index
// n the integer-lag kernel K(n,m) = v(n+m) v*(n-m) is formed over the maximal
// symmetric window truncated at the trace boundaries (no zero padding), then
// transformed over m.  The lag between the two samples is 2 m dt, so the
// frequency axis spans [0, fs/2) with df = 1/(2 N dt) -- half the usual DFT
// span; that factor of two is the standard discrete-WVD scaling.  Values are
// (uV)^2/Hz; marginals hold by construction:
//   sum_f W df = |v(t)|^2,  sum_t W dt = |v(f)|^2 for analytic input.
struct WignerVilleMap {
    double t0 = 0.0;
    double dt = 0.0;
    double df = 0.0;
    std::size_t nt = 0;
    std::size_t nf = 0;
    std::vector<double> values; // row-major, values[n*nf + k]

    double at(std::size_t n, std::size_t k) const { return values[n * nf + k]; }
    double time(std::size_t n) const { return t0 + static_cast<double>(n) * dt; }
    double freq(std::size_t k) const { return static_cast<double>(k) * df; }
};

inline WignerVilleMap wigner_ville(const ComplexTrace& v, unsigned threads = 1) {
    const std::size_t n = v.samples.size();
    if (n < 2) throw std::invalid_argument("wigner_ville: need at least two samples");

    WignerVilleMap map;
    map.t0 = v.t0;
    map.dt = v.dt;
    map.nt = n;
    map.nf = n;
    map.df = 1.0 / (2.0 * static_cast<double>(n) * v.dt);
    map.values.resize(n * n);

    Fft plan(n);
    auto column = [&](std::size_t b, std::size_t e) {
        std::vector<cplx> lag(n);
        for (std::size_t idx = b; idx < e; ++idx) {
            std::size_t m_max = std::min(idx, n - 1 - idx);
            std::fill(lag.begin(), lag.end(), cplx(0.0, 0.0));
            lag[0] = v.samples[idx] * std::conj(v.samples[idx]);
            for (std::size_t m = 1; m <= m_max; ++m) {
                cplx kern = v.samples[idx + m] * std::conj(v.samples[idx - m]);
                lag[m] += kern;
                lag[n - m] += std::conj(kern);
            }
            plan.forward(lag);
            double* row = &map.values[idx * n];
            for (std::size_t k = 0; k < n; ++k) row[k] = 2.0 * v.dt * lag[k].real();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
    if (threads <= 1) {
        column(0, n);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned ti = 0; ti < threads; ++ti) {
            std::size_t b = ti * chunk, e = std::min(n, b + chunk);
            if (b >= e) break;
            pool.emplace_back(column, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return map;
}

// Marginal distributions; optionally normalized by a shared signal energy
// E_sig (the convention for comparing converted against unconverted panels).
struct Marginals {
    std::vector<double> temporal; // per time sample
    std::vector<double> spectral; // per frequency bin
    double e_sig = 0.0;
};

inline Marginals marginals(const WignerVilleMap& w, std::optional<double> e_sig = std::nullopt) {
    Marginals m;
    m.temporal.assign(w.nt, 0.0);
    m.spectral.assign(w.nf, 0.0);
    for (std::size_t n = 0; n < w.nt; ++n) {
        const double* row = &w.values[n * w.nf];
        double acc = 0.0;
        for (std::size_t k = 0; k < w.nf; ++k) {
            acc += row[k];
            m.spectral[k] += row[k];
        }
        m.temporal[n] = acc * w.df;
    }
    for (auto& s : m.spectral) s *= w.dt;

    if (e_sig) {
        if (!(*e_sig > 0.0)) throw std::domain_error("marginals: E_sig must be > 0 for normalization");
        m.e_sig = *e_sig;
        for (auto& v : m.temporal) v /= m.e_sig;
        for (auto& v : m.spectral) v /= m.e_sig;
    }
    return m;
}

// Total trace energy sum |v|^2 dt, the E_sig normalizer.
inline double trace_energy(const ComplexTrace& v) {
    double s = 0.0;
    for (const auto& z : v.samples) s += std::norm(z);
    return s * v.dt;
}

} // namespace modeconv
