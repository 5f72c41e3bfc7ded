#include <catch2/catch_amalgamated.hpp>

#include "modeconv/tf_analysis.hpp"
#include "support/oracles.hpp"

using namespace modeconv;

namespace {

// tone burst with a raised-cosine gate, compactly supported on [i0, i1)
ComplexTrace gated_tone(std::size_t n, double dt, double f0, std::size_t i0, std::size_t i1,
                        double amp = 1.0) {
    ComplexTrace v;
    v.dt = dt;
    v.samples.assign(n, {0.0, 0.0});
    for (std::size_t k = i0; k < i1; ++k) {
        double w = 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(k - i0) /
                                        static_cast<double>(i1 - i0 - 1));
        v.samples[k] = std::polar(amp * w, two_pi * f0 * static_cast<double>(k) * dt);
    }
    return v;
}

double max_abs(const WignerVilleMap& w) {
    double m = 0.0;
    for (double x : w.values) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("voltage synthesis") {
    SampleGrid grid{0.0, 50e-9, 601};
    SECTION("zero envelope gives a zero trace") {
        Envelope env(grid);
        auto tr = synthesize_voltage(env, from_hz(2e6), 20e6);
        for (double s : tr.samples) CHECK(s == 0.0);
    }
    SECTION("constant envelope gives a calibrated cosine") {
        Envelope env(grid);
        for (auto& v : env.values) v = {2.0, 0.0};
        ReceiverCal cal{5.0, 0.49, from_hz(7.08e9)};
        auto tr = synthesize_voltage(env, from_hz(2e6), 20e6, &cal);
        double a_expect = 2.0 * std::sqrt(2.0 * cal.gain * cal.efficiency);
        for (std::size_t k = 0; k < tr.samples.size(); k += 37) {
            double t = static_cast<double>(k) * tr.dt;
            CHECK(tr.samples[k] ==
                  Catch::Approx(a_expect * std::cos(from_hz(2e6) * t)).margin(1e-12 * a_expect));
        }
    }
    SECTION("Nyquist violation is rejected") {
        Envelope env(grid);
        CHECK_THROWS_AS(synthesize_voltage(env, from_hz(11e6), 20e6), std::invalid_argument);
    }
}

TEST_CASE("analytic signal of a cosine is the complex exponential") {
    const std::size_t n = 1000;
    const double dt = 1e-3;
    const double f0 = 40.0; // 40 cycles in the window: integer periods
    VoltageTrace tr;
    tr.dt = dt;
    tr.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        tr.samples[k] = std::cos(two_pi * f0 * static_cast<double>(k) * dt);
    auto v = analytic_signal(tr);
    for (std::size_t k = 0; k < n; k += 13) {
        cplx expect = std::polar(1.0, two_pi * f0 * static_cast<double>(k) * dt);
        CHECK(std::abs(v.samples[k] - expect) < 1e-10);
    }
}

TEST_CASE("analytic signal: real part and energy identity") {
    const std::size_t n = 777;
    VoltageTrace tr;
    tr.dt = 1e-6;
    tr.samples.resize(n);
    // band-limited random-ish signal with no DC or Nyquist content
    for (std::size_t k = 0; k < n; ++k) {
        double t = static_cast<double>(k);
        tr.samples[k] = std::sin(two_pi * 37.0 * t / n) + 0.4 * std::cos(two_pi * 90.5 * t / n) +
                        0.2 * std::sin(two_pi * 151.0 * t / n + 0.3);
    }
    auto v = analytic_signal(tr);
    double e2 = 0, ev = 0;
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(v.samples[k].real() == Catch::Approx(tr.samples[k]).margin(1e-11));
        e2 += tr.samples[k] * tr.samples[k];
        ev += std::norm(v.samples[k]);
    }
    CHECK(ev == Catch::Approx(2.0 * e2).epsilon(1e-3)); // 90.5-cycle leakage spills into DC bin
}

TEST_CASE("wigner-ville of a stationary tone") {
    const std::size_t n = 256;
    const double dt = 1.0 / 256.0;
    const double f0 = 32.0; // on the WVD grid: k = f0 * 2 n dt = 64
    ComplexTrace v;
    v.dt = dt;
    v.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        v.samples[k] = std::polar(1.0, two_pi * f0 * static_cast<double>(k) * dt);
    auto w = wigner_ville(v);

    auto kf = static_cast<std::size_t>(std::llround(f0 / w.df));
    SECTION("concentrated on the f = f0 line") {
        for (std::size_t ti = 10; ti < n - 10; ti += 17) {
            std::size_t kmax = 0;
            for (std::size_t k = 1; k < n; ++k)
                if (w.at(ti, k) > w.at(ti, kmax)) kmax = k;
            CHECK(kmax == kf);
        }
    }
    SECTION("time marginal is flat at |v|^2 = 1") {
        auto m = marginals(w);
        for (std::size_t ti = 0; ti < n; ti += 11)
            CHECK(m.temporal[ti] == Catch::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("wigner-ville marginals are exact") {
    const std::size_t n = 300; // non-power-of-two exercises Bluestein
    const double dt = 2e-6;
    auto v = gated_tone(n, dt, 0.18 / dt / 2.0, 40, 230);
    for (std::size_t k = 90; k < 160; ++k) // superpose a second component
        v.samples[k] += std::polar(0.5, two_pi * 0.07 / (2.0 * dt) * static_cast<double>(k) * dt);
    auto w = wigner_ville(v);
    auto m = marginals(w);

    SECTION("time marginal = |v(t)|^2") {
        double scale = 0.0;
        for (const auto& s : v.samples) scale = std::max(scale, std::norm(s));
        for (std::size_t k = 0; k < n; ++k) {
            INFO("k=" << k);
            CHECK(std::abs(m.temporal[k] - std::norm(v.samples[k])) <= 1e-8 * scale);
        }
    }
    SECTION("frequency marginal = |v(f)|^2 on the half-bin grid") {
        // reference: zero-pad to 2n, direct DFT, scaled by dt
        std::vector<cplx> padded(2 * n, {0.0, 0.0});
        for (std::size_t k = 0; k < n; ++k) padded[k] = v.samples[k];
        auto spec = oracles::naive_dft(padded);
        double scale = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            scale = std::max(scale, std::norm(spec[k]) * dt * dt);
        for (std::size_t k = 0; k < n; ++k) {
            double expect = std::norm(spec[k]) * dt * dt;
            INFO("k=" << k);
            CHECK(std::abs(m.spectral[k] - expect) <= 1e-8 * scale);
        }
    }
    SECTION("total energy") {
        double e = 0.0;
        for (double val : w.values) e += val;
        e *= w.dt * w.df;
        double ev = 0.0;
        for (const auto& s : v.samples) ev += std::norm(s);
        ev *= dt;
        CHECK(e == Catch::Approx(ev).epsilon(1e-10));
    }
    SECTION("normalized marginals integrate to one") {
        auto mn = marginals(w, trace_energy(v));
        double it = 0, iff = 0;
        for (double x : mn.temporal) it += x;
        for (double x : mn.spectral) iff += x;
        CHECK(it * w.dt == Catch::Approx(1.0).epsilon(1e-9));
        CHECK(iff * w.df == Catch::Approx(1.0).epsilon(1e-9));
    }
    SECTION("zero E_sig is rejected") {
        CHECK_THROWS_AS(marginals(w, 0.0), std::domain_error);
    }
}

TEST_CASE("gaussian pulse is the nonnegative case") {
    const std::size_t n = 256;
    const double dt = 1e-6;
    ComplexTrace v;
    v.dt = dt;
    v.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double x = (static_cast<double>(k) - 128.0) / 20.0;
        v.samples[k] = std::polar(std::exp(-0.5 * x * x),
                                  two_pi * 0.1 * static_cast<double>(k)); // 0.1/dt/2 on-grid tone
    }
    auto w = wigner_ville(v);
    double m = max_abs(w);
    double worst = 0.0;
    for (double x : w.values) worst = std::min(worst, x);
    CHECK(worst >= -1e-9 * m);
}

TEST_CASE("two separated pulses interfere midway with sign oscillation") {
    const std::size_t n = 512;
    const double dt = 1e-6;
    auto v = gated_tone(n, dt, 0.10 / (2.0 * dt), 60, 160);
    auto v2 = gated_tone(n, dt, 0.10 / (2.0 * dt), 350, 450);
    for (std::size_t k = 0; k < n; ++k) v.samples[k] += v2.samples[k];
    auto w = wigner_ville(v);
    double m = max_abs(w);

    // midpoint between the pulses: 255; the cross term oscillates in sign
    std::size_t mid = 255;
    int sign_changes = 0;
    double prev = 0.0, magmax = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double val = w.at(mid, k);
        magmax = std::max(magmax, std::abs(val));
        if (std::abs(val) > 0.02 * m) {
            if (prev != 0.0 && val * prev < 0.0) ++sign_changes;
            prev = val;
        }
    }
    CHECK(magmax > 0.1 * m);       // cross term present
    CHECK(sign_changes >= 2);      // with genuinely negative excursions
}

TEST_CASE("time-shift covariance is exact for interior-supported signals") {
    const std::size_t n = 256;
    auto v = gated_tone(n, 1e-6, 0.12 / 2e-6, 60, 140);
    auto w = wigner_ville(v);
    const std::size_t shift = 23;
    ComplexTrace vs;
    vs.dt = v.dt;
    vs.samples.assign(n, {0.0, 0.0});
    for (std::size_t k = 0; k + shift < n; ++k) vs.samples[k + shift] = v.samples[k];
    auto ws = wigner_ville(vs);
    double m = max_abs(w);
    for (std::size_t ti = shift; ti < n; ti += 7)
        for (std::size_t k = 0; k < n; k += 5)
            CHECK(std::abs(ws.at(ti, k) - w.at(ti - shift, k)) <= 1e-12 * m);
}

TEST_CASE("modulation covariance shifts the frequency axis") {
    const std::size_t n = 256;
    auto v = gated_tone(n, 1e-6, 0.10 / 2e-6, 60, 180);
    auto w = wigner_ville(v);
    const std::size_t jump = 31; // multiples of df stay on-grid
    ComplexTrace vm;
    vm.dt = v.dt;
    vm.samples.resize(n);
    double f0 = static_cast<double>(jump) * w.df;
    for (std::size_t k = 0; k < n; ++k)
        vm.samples[k] = v.samples[k] * std::polar(1.0, two_pi * f0 * static_cast<double>(k) * v.dt);
    auto wm = wigner_ville(vm);
    double m = max_abs(w);
    for (std::size_t ti = 0; ti < n; ti += 7)
        for (std::size_t k = jump; k < n; k += 5)
            CHECK(std::abs(wm.at(ti, k) - w.at(ti, k - jump)) <= 1e-10 * m);
}

TEST_CASE("exponential envelope shows the published Lorentzian linewidth") {
    // 24 kHz power decay -> 24 kHz FWHM in the energy spectral density
    const double gamma = from_hz(24e3);
    const double fs = 20e6, f_if = 2e6;
    SampleGrid grid{0.0, 50e-9, 40001}; // 2 ms: resolution 500 Hz
    auto env = exponential_envelope(grid, gamma);
    auto tr = synthesize_voltage(env, from_hz(f_if), fs);
    auto v = analytic_signal(tr);

    // periodogram of the analytic trace
    std::vector<cplx> spec = v.samples;
    Fft(spec.size()).forward(spec);
    std::vector<double> power(spec.size() / 2);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(spec[k]);
    double df = fs / static_cast<double>(spec.size());
    double width = oracles::fwhm(power, df);
    CHECK(width == Catch::Approx(24e3).epsilon(0.05));
}
