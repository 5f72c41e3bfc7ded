#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "modeconv/device.hpp"
#include "modeconv/envelope.hpp"
#include "modeconv/rng.hpp"
#include "modeconv/schedule.hpp"

namespace modeconv {

// Thermal/vacuum noise configuration for a stochastic run.  The mechanical
// Langevin drive has <xi(t) xi*(t')> = kappa_m (n_m + 1/2) delta(t-t'); the
// optional input vacuum carries 1/2 quantum of symmetric spectral density.
struct NoiseSpec {
    double n_m = 0.0;
    double kappa_m = 0.0;
    bool include_vacuum_input = false;
    std::uint64_t seed = 0;

    bool mechanical() const { return kappa_m > 0.0; }
    bool enabled() const { return mechanical() || include_vacuum_input; }
};

struct SystemState {
    cplx a;   // circuit mode amplitude, sqrt(photons)
    cplx c;   // mechanical mode amplitude, sqrt(phonons)
    double t; // s
};

struct TrajectoryResult {
    std::vector<SystemState> states; // one per sample node
    Envelope a_out;
    double energy_in = 0.0;        // quanta
    double energy_reflected = 0.0; // quanta, output while input is active
    double energy_released = 0.0;  // quanta, output with no input
    double phonons_final = 0.0;

    double energy_out() const { return energy_reflected + energy_released; }
};

namespace detail {

inline int auto_substeps(double dt, double rate) {
    if (rate <= 0.0) return 1;
    double target = 1.0 / (40.0 * rate);
    return std::max(1, static_cast<int>(std::ceil(dt / target)));
}

inline double lerp(const std::vector<double>& v, std::size_t i, double f) {
    return v[i] * (1.0 - f) + v[i + 1] * f;
}

inline cplx lerp(const std::vector<cplx>& v, std::size_t i, double f) {
    return v[i] * (1.0 - f) + v[i + 1] * f;
}

} // namespace detail

// Weak-coupling dynamics in the frame rotating at the circuit resonance:
//   dc/dt  = -Gamma(t)/2 c - e^{-i psi} sqrt(eta Gamma(t)) a_in(t)  [+ noise]
//   a_out  =  e^{i psi} sqrt(eta Gamma(t)) c + (2 eta - 1) a_in(t)
// Deterministic runs use fixed-step RK4 with `substeps` sub-intervals per
// sample (0 = auto, 1/(40 max Gamma)); schedule and input are interpolated
// linearly inside a sample interval, so halving the substep reveals pure
// integrator error.  Stochastic runs use Euler-Maruyama on the same grid.
// Mechanical damping -kappa_m/2 c is included only when the noise spec
// carries a nonzero kappa_m, pairing fluctuation with dissipation.
inline TrajectoryResult integrate_reduced(const DeviceParams& params,
                                          const CouplingSchedule& sched,
                                          const Envelope& input,
                                          const NoiseSpec& noise = {},
                                          cplx c0 = {0.0, 0.0},
                                          GaussStream* stream = nullptr,
                                          int substeps = 0) {
    require_aligned(sched.grid, input.grid, "integrate_reduced");
    const std::size_t n = sched.grid.n;
    if (n < 2) throw std::invalid_argument("integrate_reduced: need at least two samples");

    const double dt = sched.grid.dt;
    const double et = eta(params);
    const cplx em = std::polar(1.0, -sched.phase_psi); // e^{-i psi}
    const cplx ep = std::conj(em);
    const int nsub = substeps > 0 ? substeps : detail::auto_substeps(dt, sched.max_gamma());
    const double h = dt / nsub;
    const double km = noise.mechanical() ? noise.kappa_m : 0.0;
    const double mech_var = noise.mechanical() ? noise.kappa_m * (noise.n_m + 0.5) : 0.0;
    const double vac_var = noise.include_vacuum_input ? 0.5 / dt : 0.0;

    GaussStream local(noise.seed);
    GaussStream* rng = stream ? stream : &local;

    TrajectoryResult res;
    res.states.resize(n);
    res.a_out = Envelope(sched.grid, input.carrier);

    cplx c = c0;
    std::vector<cplx> vac(noise.include_vacuum_input ? n : 0);
    if (noise.include_vacuum_input)
        for (auto& v : vac) v = rng->cnormal(vac_var);

    auto record = [&](std::size_t k) {
        double g = sched.gamma[k];
        cplx ain = input.values[k] + (noise.include_vacuum_input ? vac[k] : cplx{0.0, 0.0});
        double sg = std::sqrt(et * g);
        res.a_out.values[k] = ep * sg * c + (2.0 * et - 1.0) * ain;
        // adiabatic circuit amplitude consistent with the input-output relation
        cplx a = ep * std::sqrt(g / params.kappa) * c +
                 (2.0 * std::sqrt(params.kappa_ext) / params.kappa) * ain;
        res.states[k] = {a, c, sched.grid.time(k)};
    };

    record(0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        auto drift = [&](double frac, cplx cc) -> cplx {
            double g = detail::lerp(sched.gamma, k, frac);
            cplx ain = detail::lerp(input.values, k, frac);
            if (noise.include_vacuum_input) ain += vac[k];
            return -0.5 * (g + km) * cc - em * std::sqrt(et * g) * ain;
        };
        if (!noise.mechanical()) {
            for (int s = 0; s < nsub; ++s) {
                double f0 = static_cast<double>(s) / nsub;
                double fm = f0 + 0.5 / nsub;
                double f1 = f0 + 1.0 / nsub;
                cplx k1 = drift(f0, c);
                cplx k2 = drift(fm, c + 0.5 * h * k1);
                cplx k3 = drift(fm, c + 0.5 * h * k2);
                cplx k4 = drift(f1, c + h * k3);
                c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        } else {
            for (int s = 0; s < nsub; ++s) {
                double f0 = static_cast<double>(s) / nsub;
                c += h * drift(f0, c) + rng->cnormal(mech_var * h);
            }
        }
        record(k + 1);
    }

    res.energy_in = input.energy();
    double eout = res.a_out.energy();
    if (res.energy_in > 0.0)
        res.energy_reflected = eout;
    else
        res.energy_released = eout;
    res.phonons_final = std::norm(c);
    return res;
}

// Full linearized equations in the pump frame (detuning delta = pump minus
// circuit resonance):
//   da/dt = (i delta - kappa/2) a - i g (c + c*) + sqrt(kappa_ext) a_in
//   dc/dt = (-i omega_m - kappa_m/2) c - i (g a* + g* a)
//   a_out = sqrt(kappa_ext) a - a_in
// with g(t) = sqrt(Gamma(t) kappa)/2 e^{i psi}.  The input envelope is given
// in the cavity frame and rotated by e^{i delta t} analytically at substep
// resolution; recorded states and a_out are rotated back to the cavity frame.
inline TrajectoryResult integrate_full(const DeviceParams& params,
                                       const CouplingSchedule& sched,
                                       double delta,
                                       const Envelope& input,
                                       const NoiseSpec& noise = {},
                                       cplx a0 = {0.0, 0.0},
                                       cplx c0 = {0.0, 0.0},
                                       GaussStream* stream = nullptr,
                                       int substeps = 0) {
    require_aligned(sched.grid, input.grid, "integrate_full");
    const std::size_t n = sched.grid.n;
    if (n < 2) throw std::invalid_argument("integrate_full: need at least two samples");

    const double dt = sched.grid.dt;
    int nsub = substeps;
    if (nsub <= 0) {
        double rate = std::max({params.omega_m / two_pi, params.kappa / two_pi,
                                std::abs(delta) / two_pi, sched.max_gamma()});
        nsub = detail::auto_substeps(dt, rate);
    }
    const double h = dt / nsub;
    const double km = params.kappa_m;
    const double mech_var = noise.mechanical() ? noise.kappa_m * (noise.n_m + 0.5) : 0.0;
    const double vac_var = noise.include_vacuum_input ? 0.5 / dt : 0.0;
    const double sqke = std::sqrt(params.kappa_ext);
    const cplx gphase = std::polar(1.0, sched.phase_psi);

    GaussStream local(noise.seed);
    GaussStream* rng = stream ? stream : &local;

    std::vector<cplx> vac(noise.include_vacuum_input ? n : 0);
    if (noise.include_vacuum_input)
        for (auto& v : vac) v = rng->cnormal(vac_var);

    TrajectoryResult res;
    res.states.resize(n);
    res.a_out = Envelope(sched.grid, input.carrier);

    cplx a = a0, c = c0;
    const double t_base = sched.grid.t0;

    auto record = [&](std::size_t k) {
        double t = sched.grid.time(k);
        cplx rot = std::polar(1.0, -delta * (t - t_base)); // pump frame -> cavity frame
        cplx ain = input.values[k] + (noise.include_vacuum_input ? vac[k] : cplx{0.0, 0.0});
        cplx a_cav = a * rot;
        res.a_out.values[k] = sqke * a_cav - ain;
        res.states[k] = {a_cav, c, t};
    };

    record(0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double t_rel = static_cast<double>(k) * dt; // relative to grid start
        auto drift = [&](double frac, cplx aa, cplx cc, cplx& da, cplx& dc) {
            double g_amp = 0.5 * std::sqrt(detail::lerp(sched.gamma, k, frac) * params.kappa);
            cplx g = g_amp * gphase;
            cplx env = detail::lerp(input.values, k, frac);
            if (noise.include_vacuum_input) env += vac[k];
            double tr = t_rel + frac * dt;
            cplx ain = env * std::polar(1.0, delta * tr);
            da = (cplx(0.0, delta) - 0.5 * params.kappa) * aa - cplx(0.0, 1.0) * g * (cc + std::conj(cc)) + sqke * ain;
            dc = (cplx(0.0, -params.omega_m) - 0.5 * km) * cc -
                 cplx(0.0, 1.0) * (g * std::conj(aa) + std::conj(g) * aa);
        };
        if (!noise.mechanical()) {
            for (int s = 0; s < nsub; ++s) {
                double f0 = static_cast<double>(s) / nsub;
                double fm = f0 + 0.5 / nsub;
                double f1 = f0 + 1.0 / nsub;
                cplx da1, dc1, da2, dc2, da3, dc3, da4, dc4;
                drift(f0, a, c, da1, dc1);
                drift(fm, a + 0.5 * h * da1, c + 0.5 * h * dc1, da2, dc2);
                drift(fm, a + 0.5 * h * da2, c + 0.5 * h * dc2, da3, dc3);
                drift(f1, a + h * da3, c + h * dc3, da4, dc4);
                a += h / 6.0 * (da1 + 2.0 * da2 + 2.0 * da3 + da4);
                c += h / 6.0 * (dc1 + 2.0 * dc2 + 2.0 * dc3 + dc4);
            }
        } else {
            for (int s = 0; s < nsub; ++s) {
                double f0 = static_cast<double>(s) / nsub;
                cplx da, dc;
                drift(f0, a, c, da, dc);
                a += h * da;
                c += h * dc + rng->cnormal(mech_var * h);
            }
        }
        record(k + 1);
    }

    res.energy_in = input.energy();
    double eout = res.a_out.energy();
    if (res.energy_in > 0.0)
        res.energy_reflected = eout;
    else
        res.energy_released = eout;
    res.phonons_final = std::norm(c);
    return res;
}

// Capture-store-release protocol specification.  Schedules are leg-local
// (grid starting at 0); run_protocol places them on the common timeline.
struct ProtocolSpec {
    CouplingSchedule capture_schedule;
    double store_duration = 0.0;
    CouplingSchedule release_schedule;
    Envelope input;
    double carrier_in = 0.0;   // rad/s
    double carrier_out = 0.0;  // rad/s
    double store_mech_detuning = 0.0; // adiabatic omega_m shift during storage, rad/s
    NoiseSpec noise;
};

struct ProtocolResult {
    TrajectoryResult capture;
    TrajectoryResult store;
    TrajectoryResult release;
    Envelope output;        // stitched a_out over the whole protocol
    Envelope converted;     // release-leg a_out, carrier = carrier_out
    double carrier_switch_time = 0.0;
    double energy_in = 0.0;
    double energy_reflected = 0.0;
    double energy_released = 0.0;
    double phonons_after_capture = 0.0;
    double phonons_after_store = 0.0;
    cplx c_after_store{0.0, 0.0};
    double efficiency = 0.0;
    std::vector<std::string> warnings;
};

// Runs the three legs on the reduced model: capture at carrier_in, free
// evolution with Gamma = 0 (decoherence active when noise is on), release at
// carrier_out.  The V_dc retune during storage enters as the deterministic
// phase store_mech_detuning * store_duration on c.
inline ProtocolResult run_protocol(const ProtocolSpec& spec, const DeviceParams& params) {
    if (spec.store_duration < 0.0) throw std::invalid_argument("store_duration must be >= 0");
    ProtocolResult res;
    res.warnings = spec.capture_schedule.warnings;
    res.warnings.insert(res.warnings.end(), spec.release_schedule.warnings.begin(),
                        spec.release_schedule.warnings.end());

    NoiseSpec noise = spec.noise;
    GaussStream rng(noise.seed);

    Envelope input = spec.input;
    input.carrier = spec.carrier_in;
    res.capture = integrate_reduced(params, spec.capture_schedule, input, noise,
                                    {0.0, 0.0}, &rng);
    cplx c = res.capture.states.back().c;
    res.phonons_after_capture = std::norm(c);

    const double dt = spec.capture_schedule.grid.dt;
    double t_cursor = spec.capture_schedule.grid.t0 +
                      static_cast<double>(spec.capture_schedule.grid.n) * dt;

    // storage leg
    auto n_store = static_cast<std::size_t>(std::llround(spec.store_duration / dt));
    if (n_store >= 2) {
        SampleGrid sg{t_cursor, dt, n_store};
        CouplingSchedule hold;
        hold.grid = sg;
        hold.gamma.assign(n_store, 0.0);
        Envelope silent(sg, spec.carrier_in);
        res.store = integrate_reduced(params, hold, silent, noise, c, &rng);
        c = res.store.states.back().c;
        t_cursor += static_cast<double>(n_store) * dt;
    }
    if (spec.store_mech_detuning != 0.0)
        c *= std::polar(1.0, -spec.store_mech_detuning * spec.store_duration);
    res.phonons_after_store = std::norm(c);
    res.c_after_store = c;

    double total_t = spec.store_duration +
                     spec.capture_schedule.grid.duration() +
                     spec.release_schedule.grid.duration();
    if (noise.mechanical() && noise.n_m * noise.kappa_m * total_t > 10.0)
        res.warnings.push_back("storage sanity: n_m*kappa_m*T > 10, thermal noise dominates");

    // release leg
    CouplingSchedule rel = spec.release_schedule;
    rel.grid.t0 = t_cursor;
    res.carrier_switch_time = t_cursor;
    Envelope silent_rel(rel.grid, spec.carrier_out);
    res.release = integrate_reduced(params, rel, silent_rel, noise, c, &rng);

    // stitch output
    std::size_t n_total = res.capture.a_out.size() +
                          res.store.a_out.size() + res.release.a_out.size();
    res.output = Envelope(SampleGrid{spec.capture_schedule.grid.t0, dt, n_total}, spec.carrier_in);
    std::size_t pos = 0;
    for (const auto& leg : {&res.capture, &res.store, &res.release})
        for (const auto& v : leg->a_out.values) res.output.values[pos++] = v;

    res.converted = res.release.a_out;
    res.converted.carrier = spec.carrier_out;

    res.energy_in = res.capture.energy_in;
    res.energy_reflected = res.capture.energy_reflected + res.store.energy_out();
    res.energy_released = res.release.energy_released;
    res.efficiency = res.energy_in > 0.0 ? res.energy_released / res.energy_in : 0.0;
    return res;
}

struct ConvertedSignal {
    Envelope output;        // release-leg envelope
    cplx phonon_after_store{0.0, 0.0};
    cplx phonon_final{0.0, 0.0};
};

// Streaming ensemble runner: reduce(run_index, result) is invoked once per
// run.  Runs are partitioned over threads and each run owns its RNG stream
// (seed derived from master_seed and the run index), so the ensemble is
// reproducible regardless of scheduling; reducers must write only to
// run-indexed slots.
inline void monte_carlo_reduce(const ProtocolSpec& spec, const DeviceParams& params,
                               std::size_t n_runs, std::uint64_t master_seed,
                               const std::function<void(std::size_t, const ProtocolResult&)>& reduce,
                               unsigned threads = 1) {
    if (n_runs < 1) throw std::invalid_argument("monte_carlo: n_runs must be >= 1");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_runs));

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t run = begin; run < end; ++run) {
            ProtocolSpec local = spec;
            local.noise.seed = derive_seed(master_seed, run);
            ProtocolResult r = run_protocol(local, params);
            reduce(run, r);
        }
    };
    if (threads <= 1) {
        worker(0, n_runs);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n_runs + threads - 1) / threads;
    for (unsigned ti = 0; ti < threads; ++ti) {
        std::size_t b = ti * chunk;
        std::size_t e = std::min(n_runs, b + chunk);
        if (b >= e) break;
        pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
}

inline std::vector<ConvertedSignal> monte_carlo(const ProtocolSpec& spec,
                                                const DeviceParams& params,
                                                std::size_t n_runs,
                                                std::uint64_t master_seed,
                                                unsigned threads = 1) {
    std::vector<ConvertedSignal> out(n_runs);
    monte_carlo_reduce(spec, params, n_runs, master_seed,
                       [&out](std::size_t run, const ProtocolResult& r) {
                           out[run].output = r.converted;
                           out[run].phonon_after_store = r.c_after_store;
                           out[run].phonon_final = r.release.states.back().c;
                       },
                       threads);
    return out;
}

} // namespace modeconv
