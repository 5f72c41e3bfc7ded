// Command-line front end: scenario configs in, CSV/JSON artifacts out.
// Exit codes: 0 ok, 2 config error, 3 physics infeasibility, 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "modeconv/modeconv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace modeconv;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_physics = 3;
constexpr int exit_io = 4;

struct Scenario {
    std::string mode;
    std::string config_path;
    Config cfg;
    fs::path out_dir;
    std::uint64_t seed = 1;
    std::size_t runs = 0;   // 0: take from config
    unsigned threads = 1;   // 0: auto
};

struct Manifest {
    json j;
    std::vector<std::string> files;

    Manifest(const Scenario& sc) {
        j["mode"] = sc.mode;
        j["config"] = sc.config_path;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(sc.cfg.hash()));
        j["config_hash"] = buf;
        j["seed"] = sc.seed;
        j["status"] = "ok";
    }

    void add(const fs::path& p) { files.push_back(p.filename().string()); }

    void write(const fs::path& dir, const std::string& status, const std::string& message = "") {
        j["status"] = status;
        if (!message.empty()) j["message"] = message;
        j["files"] = files;
        std::ofstream out(dir / "manifest.json");
        out << j.dump(2) << '\n';
    }
};

double round_up_count(double duration, double dt) { return std::ceil(duration / dt - 0.5); }

struct PulseSettings {
    double gamma, gamma0, dt, t_capture, t_release, t_center, psi;
};

PulseSettings pulse_settings(const Config& cfg) {
    PulseSettings s{};
    s.gamma = from_hz(cfg.get_double("pulse", "gamma_hz", 24e3));
    s.gamma0 = from_hz(cfg.get_double("pulse", "gamma0_hz", 500e3));
    s.dt = cfg.get_double("pulse", "dt_s", 25e-9);
    s.t_capture = cfg.get_double("pulse", "capture_duration_s", 30e-6);
    s.t_release = cfg.get_double("pulse", "release_duration_s", 30e-6);
    s.t_center = cfg.get_double("pulse", "release_center_s", 15e-6);
    s.psi = cfg.get_double("pulse", "psi_rad", 0.0);
    if (!(s.gamma > 0.0) || !(s.gamma0 > 0.0) || !(s.dt > 0.0) ||
        !(s.t_capture > 0.0) || !(s.t_release > 0.0))
        throw ConfigError("pulse settings must be positive");
    return s;
}

NoiseSpec noise_from_config(const Config& cfg, std::uint64_t seed) {
    NoiseSpec n;
    if (cfg.get_bool("noise", "enabled", false)) {
        n.n_m = cfg.get_double("noise", "n_m", 36.0);
        n.kappa_m = from_hz(cfg.get_double("noise", "kappa_m_hz", 25.0));
        n.include_vacuum_input = cfg.get_bool("noise", "vacuum_input", false);
    }
    n.seed = seed;
    return n;
}

ReceiverCal receiver_from_config(const Config& cfg) {
    ReceiverCal cal;
    cal.gain = cfg.get_double("receiver", "gain", 11.0);
    cal.efficiency = cfg.get_double("receiver", "efficiency", 0.60);
    cal.frequency = from_hz(cfg.get_double("receiver", "frequency_hz", 7.34135e9));
    if (!cal.valid()) throw ConfigError("invalid receiver calibration");
    return cal;
}

ProtocolSpec build_protocol(const Scenario& sc, const DeviceParams& params) {
    const auto ps = pulse_settings(sc.cfg);
    auto n_cap = static_cast<std::size_t>(round_up_count(ps.t_capture, ps.dt)) + 1;
    auto n_rel = static_cast<std::size_t>(round_up_count(ps.t_release, ps.dt)) + 1;

    ProtocolSpec spec;
    spec.capture_schedule =
        exp_capture_schedule(ps.gamma, ps.gamma0, SampleGrid{0.0, ps.dt, n_cap}, params.kappa);
    spec.capture_schedule.phase_psi = ps.psi;
    spec.release_schedule = gauss_release_schedule(ps.gamma, ps.t_center, ps.gamma0,
                                                   SampleGrid{0.0, ps.dt, n_rel}, params.kappa);
    spec.release_schedule.phase_psi = ps.psi;
    spec.store_duration = sc.cfg.get_double("protocol", "store_duration_s", 30e-6);
    spec.carrier_in = from_hz(sc.cfg.get_double("protocol", "carrier_in_hz", 7.07825e9));
    spec.carrier_out = from_hz(sc.cfg.get_double("protocol", "carrier_out_hz", 7.34135e9));
    spec.store_mech_detuning = from_hz(sc.cfg.get_double("protocol", "store_detuning_hz", 0.0));
    spec.noise = noise_from_config(sc.cfg, sc.seed);

    std::string shape = sc.cfg.get_string("protocol", "input", "exponential");
    double quanta = sc.cfg.get_double("protocol", "input_quanta", 10.0);
    SampleGrid ingrid{0.0, ps.dt, n_cap};
    if (shape == "exponential") {
        spec.input = exponential_envelope(ingrid, ps.gamma, 0.0, 1.0, spec.carrier_in);
    } else if (shape == "gaussian") {
        spec.input = gaussian_envelope(ingrid, ps.gamma, 0.5 * ps.t_capture, 1.0, spec.carrier_in);
    } else if (shape.rfind("csv:", 0) == 0) {
        auto rows = read_csv(shape.substr(4));
        if (rows.empty()) throw ConfigError("input csv is empty");
        spec.input = Envelope(ingrid, spec.carrier_in);
        for (std::size_t k = 0; k < ingrid.n && k < rows.size(); ++k) {
            if (rows[k].size() < 3) throw ConfigError("input csv needs t,re,im columns");
            spec.input.values[k] = cplx(rows[k][1], rows[k][2]);
        }
    } else {
        throw ConfigError("unknown protocol input shape: " + shape);
    }
    if (!(spec.input.energy() > 0.0)) throw ConfigError("protocol input has zero energy");
    spec.input.normalize_to_quanta(quanta);
    return spec;
}

void write_trajectory(const fs::path& path, const ProtocolResult& res) {
    CsvWriter csv(path.string());
    csv.header({"t", "re_a", "im_a", "re_c", "im_c", "re_a_out", "im_a_out"});
    for (const auto* leg : {&res.capture, &res.store, &res.release}) {
        for (std::size_t k = 0; k < leg->states.size(); ++k) {
            const auto& st = leg->states[k];
            const cplx& ao = leg->a_out.values[k];
            csv.row({st.t, st.a.real(), st.a.imag(), st.c.real(), st.c.imag(),
                     ao.real(), ao.imag()});
        }
    }
}

void write_envelope(const fs::path& path, const Envelope& env) {
    CsvWriter csv(path.string());
    csv.header({"t", "re", "im"});
    for (std::size_t k = 0; k < env.size(); ++k)
        csv.row({env.grid.time(k), env.values[k].real(), env.values[k].imag()});
}

int mode_pulse(const Scenario& sc, const DeviceParams& params, Manifest& man) {
    ProtocolSpec spec = build_protocol(sc, params);
    auto cap_pump = schedule_to_pump(spec.capture_schedule, params);
    auto rel_pump = schedule_to_pump(spec.release_schedule, params);

    auto dump = [&](const fs::path& p, const CouplingSchedule& s, const PumpProgram& n) {
        CsvWriter csv(p.string());
        csv.header({"t", "gamma", "n_pump"});
        for (std::size_t k = 0; k < s.gamma.size(); ++k)
            csv.row({s.grid.time(k), s.gamma[k], n.photons[k]});
        man.add(p);
    };
    dump(sc.out_dir / "capture_schedule.csv", spec.capture_schedule, cap_pump);
    dump(sc.out_dir / "release_schedule.csv", spec.release_schedule, rel_pump);

    json j;
    j["max_gamma_capture"] = spec.capture_schedule.max_gamma();
    j["max_gamma_release"] = spec.release_schedule.max_gamma();
    j["bandwidth_bound"] = 0.5 * params.kappa;
    j["warnings"] = json::array();
    for (const auto* s : {&spec.capture_schedule, &spec.release_schedule})
        for (const auto& w : s->warnings) j["warnings"].push_back(w);
    std::ofstream(sc.out_dir / "summary.json") << j.dump(2) << '\n';
    man.add(sc.out_dir / "summary.json");
    return exit_ok;
}

int mode_protocol(const Scenario& sc, const DeviceParams& params, Manifest& man) {
    ProtocolSpec spec = build_protocol(sc, params);
    ProtocolResult res = run_protocol(spec, params);

    write_trajectory(sc.out_dir / "trajectory.csv", res);
    man.add(sc.out_dir / "trajectory.csv");
    write_envelope(sc.out_dir / "converted_signal.csv", res.converted);
    man.add(sc.out_dir / "converted_signal.csv");

    json j;
    j["energy_in"] = res.energy_in;
    j["energy_reflected"] = res.energy_reflected;
    j["energy_released"] = res.energy_released;
    j["phonons_after_capture"] = res.phonons_after_capture;
    j["phonons_after_store"] = res.phonons_after_store;
    j["capture_efficiency"] = res.phonons_after_capture / res.energy_in;
    j["efficiency"] = res.efficiency;
    j["carrier_switch_time"] = res.carrier_switch_time;
    j["warnings"] = res.warnings;
    std::ofstream(sc.out_dir / "summary.json") << j.dump(2) << '\n';
    man.add(sc.out_dir / "summary.json");
    return exit_ok;
}

int mode_wigner(const Scenario& sc, const DeviceParams& params, Manifest& man) {
    const auto cal = receiver_from_config(sc.cfg);
    const double f_if = sc.cfg.get_double("receiver", "if_hz", 2e6);
    const double fs = sc.cfg.get_double("receiver", "sample_rate_hz", 20e6);
    const bool normalize = sc.cfg.get_bool("wigner", "normalize", true);
    const std::string source = sc.cfg.get_string("wigner", "source", "converted");

    ProtocolSpec spec = build_protocol(sc, params);
    Envelope env;
    if (source == "input") {
        env = spec.input;
    } else if (source == "converted") {
        env = run_protocol(spec, params).converted;
    } else if (source == "output") {
        env = run_protocol(spec, params).output;
    } else if (source.rfind("csv:", 0) == 0) {
        auto rows = read_csv(source.substr(4));
        if (rows.size() < 2) throw ConfigError("wigner: csv input needs at least 2 samples");
        env.grid = SampleGrid{rows[0][0], rows[1][0] - rows[0][0], rows.size()};
        env.values.reserve(rows.size());
        for (const auto& r : rows) {
            if (r.size() < 3) throw ConfigError("wigner: csv input needs t,re,im columns");
            env.values.emplace_back(r[1], r[2]);
        }
    } else {
        throw ConfigError("unknown wigner source: " + source);
    }
    if (env.size() < 2) throw ConfigError("wigner: empty input");

    VoltageTrace trace = synthesize_voltage(env, from_hz(f_if), fs, &cal);
    if (trace.samples.size() > 8192)
        throw ConfigError("wigner: trace too long (>8192 samples); reduce duration or rate");
    ComplexTrace v = analytic_signal(trace);
    WignerVilleMap w = wigner_ville(v, sc.threads);

    std::optional<double> e_sig;
    if (normalize) {
        // Fig.-3 convention: shared normalization by the unconverted signal energy.
        VoltageTrace ref = synthesize_voltage(spec.input, from_hz(f_if), fs, &cal);
        e_sig = trace_energy(analytic_signal(ref));
    }
    Marginals m = marginals(w, e_sig);

    {
        json j;
        j["t_axis"] = json::array();
        j["f_axis"] = json::array();
        for (std::size_t n = 0; n < w.nt; ++n) j["t_axis"].push_back(w.time(n));
        for (std::size_t k = 0; k < w.nf; ++k) j["f_axis"].push_back(w.freq(k));
        j["values"] = json::array();
        for (std::size_t n = 0; n < w.nt; ++n) {
            json row = json::array();
            for (std::size_t k = 0; k < w.nf; ++k) row.push_back(w.at(n, k));
            j["values"].push_back(std::move(row));
        }
        std::ofstream(sc.out_dir / "wvd.json") << j.dump() << '\n';
        man.add(sc.out_dir / "wvd.json");
    }
    {
        CsvWriter csv((sc.out_dir / "marginals.csv").string());
        csv.header({"t", "epsilon_t", "f", "epsilon_f"});
        for (std::size_t k = 0; k < std::max(w.nt, w.nf); ++k) {
            double t = k < w.nt ? w.time(k) : 0.0;
            double et = k < w.nt ? m.temporal[k] : 0.0;
            double f = k < w.nf ? w.freq(k) : 0.0;
            double ef = k < w.nf ? m.spectral[k] : 0.0;
            csv.row({t, et, f, ef});
        }
        man.add(sc.out_dir / "marginals.csv");
    }
    write_envelope(sc.out_dir / "analyzed_envelope.csv", env);
    man.add(sc.out_dir / "analyzed_envelope.csv");
    return exit_ok;
}

int mode_noise_ensemble(const Scenario& sc, const DeviceParams& params, Manifest& man) {
    const auto cal = receiver_from_config(sc.cfg);
    const bool phase_preserving = sc.cfg.get_bool("receiver", "phase_preserving", false);
    const double f_if = sc.cfg.get_double("receiver", "if_hz", 2e6);
    const double fs = sc.cfg.get_double("receiver", "sample_rate_hz", 20e6);
    std::size_t runs = sc.runs ? sc.runs
                               : static_cast<std::size_t>(sc.cfg.get_int("ensemble", "runs", 500));
    auto vac_runs = static_cast<std::size_t>(
        sc.cfg.get_int("ensemble", "vacuum_runs", static_cast<std::int64_t>(runs)));

    ProtocolSpec spec = build_protocol(sc, params);
    if (!spec.noise.enabled())
        spec.noise.kappa_m = params.kappa_m, spec.noise.n_m = params.n_m;

    // matched window and IF from the noiseless converted signal
    ProtocolSpec clean = spec;
    clean.noise = NoiseSpec{};
    ProtocolResult nominal = run_protocol(clean, params);
    VoltageTrace ref = synthesize_voltage(nominal.converted, from_hz(f_if), fs, &cal, phase_preserving);
    std::vector<double> window(ref.samples.size());
    {
        ComplexTrace refv = analytic_signal(ref);
        for (std::size_t k = 0; k < window.size(); ++k) window[k] = std::abs(refv.samples[k]);
    }

    std::vector<QuadraturePair> quads(runs);
    monte_carlo_reduce(spec, params, runs, sc.seed,
                       [&](std::size_t run, const ProtocolResult& r) {
                           VoltageTrace t =
                               synthesize_voltage(r.converted, from_hz(f_if), fs, &cal, phase_preserving);
                           quads[run] = quadratures(t, from_hz(f_if), window, cal, phase_preserving);
                       },
                       sc.threads);

    // vacuum reference: receiver noise alone through the same matched filter
    double zeta = phase_preserving ? 0.5 * cal.efficiency : cal.efficiency;
    double s_out = cal.gain * (0.5 * (1.0 - zeta) + zeta * 0.5);
    double sigma = std::sqrt(s_out / (2.0 * ref.dt));
    std::vector<QuadraturePair> vac(vac_runs);
    for (std::size_t run = 0; run < vac_runs; ++run) {
        GaussStream g(derive_seed(sc.seed ^ 0x5ac5ac5ac5ac5acULL, run));
        VoltageTrace t = ref;
        for (auto& s : t.samples) s = sigma * g.normal();
        vac[run] = quadratures(t, from_hz(f_if), window, cal, phase_preserving);
    }

    {
        CsvWriter csv((sc.out_dir / "quadratures.csv").string());
        csv.header({"run", "X1", "X2"});
        for (std::size_t run = 0; run < runs; ++run)
            csv.row({static_cast<double>(run), quads[run].x1, quads[run].x2});
        man.add(sc.out_dir / "quadratures.csv");
    }
    {
        CsvWriter csv((sc.out_dir / "vacuum_quadratures.csv").string());
        csv.header({"run", "X1", "X2"});
        for (std::size_t run = 0; run < vac_runs; ++run)
            csv.row({static_cast<double>(run), vac[run].x1, vac[run].x2});
        man.add(sc.out_dir / "vacuum_quadratures.csv");
    }

    NoiseReport rep = added_noise(quads, vac);
    double t_total = spec.capture_schedule.grid.duration() + spec.store_duration +
                     spec.release_schedule.grid.duration();
    json j;
    j["runs"] = runs;
    j["var_sum"] = rep.var_sum;
    j["vacuum_reference"] = rep.vacuum_reference;
    j["added_noise"] = rep.added_noise;
    j["stderr"] = rep.stderr_;
    j["decoherence_rate_hz"] = to_hz(spec.noise.kappa_m * spec.noise.n_m);
    j["protocol_duration_s"] = t_total;
    j["lindblad_floor_quanta"] = spec.noise.kappa_m * spec.noise.n_m * t_total;
    std::ofstream(sc.out_dir / "summary.json") << j.dump(2) << '\n';
    man.add(sc.out_dir / "summary.json");
    return exit_ok;
}

int mode_calibration(const Scenario& sc, const DeviceParams& params, Manifest& man) {
    (void)params;
    const double omega = from_hz(sc.cfg.get_double("calibration", "frequency_hz", 7.07825e9));
    std::vector<std::pair<double, double>> data;

    if (sc.cfg.has("calibration", "input_csv")) {
        auto rows = read_csv(sc.cfg.get_string("calibration", "input_csv"));
        for (const auto& r : rows) {
            if (r.size() < 2) throw ConfigError("calibration csv needs T_L,S_out columns");
            data.emplace_back(r[0], r[1]);
        }
    } else {
        double g_true = sc.cfg.get_double("calibration", "true_gain", 5.0);
        double z_true = sc.cfg.get_double("calibration", "true_efficiency", 0.49);
        double frac = sc.cfg.get_double("calibration", "noise_frac", 0.01);
        auto npts = static_cast<std::size_t>(sc.cfg.get_int("calibration", "points", 20));
        double tmin = sc.cfg.get_double("calibration", "t_min_k", 0.05);
        double tmax = sc.cfg.get_double("calibration", "t_max_k", 0.5);
        ReceiverCal truth{g_true, z_true, omega};
        GaussStream g(sc.seed);
        for (std::size_t i = 0; i < npts; ++i) {
            double T = tmin + (tmax - tmin) * static_cast<double>(i) / static_cast<double>(npts - 1);
            double s = receiver_output(load_spectral_density(T, omega), truth);
            data.emplace_back(T, s * (1.0 + frac * g.normal()));
        }
    }
    if (data.size() < 3) throw ConfigError("calibration needs at least 3 points");

    CalibrationFit fit = fit_calibration(data, omega);
    {
        CsvWriter csv((sc.out_dir / "calibration_data.csv").string());
        csv.header({"T_L", "S_out"});
        for (const auto& [t, s] : data) csv.row({t, s});
        man.add(sc.out_dir / "calibration_data.csv");
    }
    {
        CsvWriter csv((sc.out_dir / "calibration_fit.csv").string());
        csv.header({"T_L", "S_out_model"});
        double tmax = 0.0;
        for (const auto& d : data) tmax = std::max(tmax, d.first);
        for (int i = 0; i <= 200; ++i) {
            double T = tmax * (i + 1) / 201.0;
            csv.row({T, receiver_output(load_spectral_density(T, omega), fit.cal)});
        }
        man.add(sc.out_dir / "calibration_fit.csv");
    }
    json j;
    j["gain"] = fit.cal.gain;
    j["efficiency"] = fit.cal.efficiency;
    j["residual_rms"] = fit.residual_rms;
    j["iterations"] = fit.iterations;
    std::ofstream(sc.out_dir / "calibration.json") << j.dump(2) << '\n';
    man.add(sc.out_dir / "calibration.json");
    return exit_ok;
}

int mode_tuning_sweep(const Scenario& sc, const DeviceParams& params, Manifest& man) {
    TuningModel model = TuningModel::calibrated(params, sc.cfg.get_double("tuning", "m_eff_kg", 5e-14));
    model.A_act = sc.cfg.get_double("tuning", "a_act_m2", model.A_act);
    model.A_cap = sc.cfg.get_double("tuning", "a_cap_m2", model.A_cap);
    model.d_cap0 = sc.cfg.get_double("tuning", "d_cap0_nm", model.d_cap0 * 1e9) * 1e-9;
    model.d_act0 = sc.cfg.get_double("tuning", "d_act0_nm", model.d_act0 * 1e9) * 1e-9;
    model.casimir_scale = sc.cfg.get_double("tuning", "casimir_scale", model.casimir_scale);
    model.patch_voltage = sc.cfg.get_double("tuning", "patch_voltage_v", 0.0);
    model.c_ratio = sc.cfg.get_double("tuning", "c_ratio", model.c_ratio);

    double v_min = sc.cfg.get_double("tuning", "v_min", 0.0);
    double v_max = sc.cfg.get_double("tuning", "v_max", 25.0);
    auto pts = static_cast<std::size_t>(sc.cfg.get_int("tuning", "points", 251));
    auto rows = tuning_sweep(model, params, v_min, v_max, pts);

    CsvWriter csv((sc.out_dir / "sweep.csv").string());
    csv.header({"V", "x_star", "omega_e_hz", "omega_m_hz", "pulled_in"});
    for (const auto& r : rows)
        csv.row({r.V, r.x_star, to_hz(r.omega_e), to_hz(r.omega_m), r.pulled_in ? 1.0 : 0.0});
    man.add(sc.out_dir / "sweep.csv");
    return exit_ok;
}

int run_scenario(Scenario& sc) {
    std::error_code ec;
    fs::create_directories(sc.out_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory: " << sc.out_dir << '\n';
        return exit_io;
    }
    Manifest man(sc);
    try {
        DeviceParams params = device_from_config(sc.cfg);
        auto rep = validate(params);
        if (!rep.valid()) {
            std::string msg = "device parameters invalid:";
            for (const auto& v : rep.violations) msg += " " + v + ";";
            std::cerr << msg << '\n';
            man.write(sc.out_dir, "error", msg);
            return exit_physics;
        }

        int rc;
        if (sc.mode == "pulse") rc = mode_pulse(sc, params, man);
        else if (sc.mode == "protocol") rc = mode_protocol(sc, params, man);
        else if (sc.mode == "wigner") rc = mode_wigner(sc, params, man);
        else if (sc.mode == "noise-ensemble") rc = mode_noise_ensemble(sc, params, man);
        else if (sc.mode == "calibration") rc = mode_calibration(sc, params, man);
        else if (sc.mode == "tuning-sweep") rc = mode_tuning_sweep(sc, params, man);
        else {
            man.write(sc.out_dir, "error", "unknown mode");
            return exit_config;
        }
        man.write(sc.out_dir, "ok");
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        man.write(sc.out_dir, "error", e.what());
        return exit_config;
    } catch (const std::domain_error& e) {
        std::cerr << "physics error: " << e.what() << '\n';
        man.write(sc.out_dir, "error", e.what());
        return exit_physics;
    } catch (const std::invalid_argument& e) {
        std::cerr << "physics error: " << e.what() << '\n';
        man.write(sc.out_dir, "error", e.what());
        return exit_physics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        man.write(sc.out_dir, "error", e.what());
        return exit_io;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"electromechanical temporal/spectral mode converter toolkit"};
    app.require_subcommand(1);

    Scenario sc;
    std::string out = "out";
    for (const char* mode :
         {"protocol", "pulse", "wigner", "noise-ensemble", "calibration", "tuning-sweep"}) {
        auto* sub = app.add_subcommand(mode);
        sub->add_option("--config", sc.config_path, "scenario config file")->required();
        sub->add_option("--seed", sc.seed, "master RNG seed");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--runs", sc.runs, "ensemble size override");
        sub->add_option("--threads", sc.threads, "worker threads (0 = auto)");
        sub->callback([&sc, mode]() { sc.mode = mode; });
    }

    CLI11_PARSE(app, argc, argv);
    sc.out_dir = out;
    try {
        sc.cfg = Config::load(sc.config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    return run_scenario(sc);
}
