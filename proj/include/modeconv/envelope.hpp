#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "modeconv/grid.hpp"

namespace modeconv {

using cplx = std::complex<double>;

// Complex baseband amplitude sampled on a uniform grid, units sqrt(quanta/s):
// |v(t)|^2 is a photon flux.  carrier is metadata (rad/s, absolute frequency);
// the simulation itself never oscillates at the carrier.
struct Envelope {
    SampleGrid grid;
    std::vector<cplx> values;
    double carrier = 0.0; // rad/s, metadata only

    Envelope() = default;
    Envelope(SampleGrid g, double carrier_ = 0.0)
        : grid(g), values(g.n, cplx(0.0, 0.0)), carrier(carrier_) {}

    std::size_t size() const { return values.size(); }

    // Trapezoidal integral of |v|^2 dt, in quanta.
    double energy() const {
        if (values.size() < 2) return 0.0;
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < values.size(); ++k)
            sum += std::norm(values[k]) + std::norm(values[k + 1]);
        return 0.5 * sum * grid.dt;
    }

    double peak_abs() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    Envelope& scale(double s) {
        for (auto& v : values) v *= s;
        return *this;
    }

    // Rescale so that energy() == quanta.
    Envelope& normalize_to_quanta(double quanta) {
        double e = energy();
        if (e <= 0.0) throw std::domain_error("cannot normalize a zero envelope");
        return scale(std::sqrt(quanta / e));
    }
};

// |a_in| = exp(-gamma (t - t_on)/2) for t >= t_on: power decays at rate gamma.
inline Envelope exponential_envelope(SampleGrid grid, double gamma, double t_on = 0.0,
                                     double amplitude = 1.0, double carrier = 0.0) {
    Envelope env(grid, carrier);
    for (std::size_t k = 0; k < grid.n; ++k) {
        double t = grid.time(k) - t_on;
        env.values[k] = (t >= 0.0) ? cplx(amplitude * std::exp(-0.5 * gamma * t), 0.0) : cplx(0.0, 0.0);
    }
    return env;
}

// |a| = exp(-gamma^2 (t - t_center)^2), the release-envelope convention.
inline Envelope gaussian_envelope(SampleGrid grid, double gamma, double t_center,
                                  double amplitude = 1.0, double carrier = 0.0) {
    Envelope env(grid, carrier);
    for (std::size_t k = 0; k < grid.n; ++k) {
        double x = gamma * (grid.time(k) - t_center);
        env.values[k] = cplx(amplitude * std::exp(-x * x), 0.0);
    }
    return env;
}

// Linear interpolation between samples; clamped at the ends.
inline cplx interp(const Envelope& env, double t) {
    if (env.values.empty()) return {0.0, 0.0};
    double s = (t - env.grid.t0) / env.grid.dt;
    if (s <= 0.0) return env.values.front();
    double smax = static_cast<double>(env.values.size() - 1);
    if (s >= smax) return env.values.back();
    auto i = static_cast<std::size_t>(s);
    double f = s - static_cast<double>(i);
    return env.values[i] * (1.0 - f) + env.values[i + 1] * f;
}

} // namespace modeconv
