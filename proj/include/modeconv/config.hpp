#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "modeconv/constants.hpp"
#include "modeconv/device.hpp"

namespace modeconv {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat sectioned key-value configuration:
//   [section]
//   key = value   # comment
// Frequencies are given in Hz, times in seconds, voltages in volts; lengths
// carry a unit suffix in the key name (_nm, _fm, _m).
class Config {
public:
    static Config parse(std::istream& in) {
        Config cfg;
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = strip(strip_comment(line));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
                section = strip(s.substr(1, s.size() - 2));
                continue;
            }
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            std::string key = strip(s.substr(0, eq));
            std::string val = strip(s.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            cfg.entries_[section + "." + key] = val;
        }
        return cfg;
    }

    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        return parse(in);
    }

    bool has(const std::string& section, const std::string& key) const {
        return entries_.count(section + "." + key) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           std::optional<std::string> fallback = std::nullopt) const {
        auto it = entries_.find(section + "." + key);
        if (it != entries_.end()) return it->second;
        if (fallback) return *fallback;
        throw ConfigError("missing config key [" + section + "] " + key);
    }

    double get_double(const std::string& section, const std::string& key,
                      std::optional<double> fallback = std::nullopt) const {
        auto it = entries_.find(section + "." + key);
        if (it == entries_.end()) {
            if (fallback) return *fallback;
            throw ConfigError("missing config key [" + section + "] " + key);
        }
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second, &pos);
            if (pos != it->second.size())
                throw ConfigError("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key [" + section + "] " + key + ": not a number: " + it->second);
        }
    }

    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::optional<std::int64_t> fallback = std::nullopt) const {
        auto it = entries_.find(section + "." + key);
        if (it == entries_.end()) {
            if (fallback) return *fallback;
            throw ConfigError("missing config key [" + section + "] " + key);
        }
        try {
            return std::stoll(it->second);
        } catch (const std::exception&) {
            throw ConfigError("config key [" + section + "] " + key + ": not an integer");
        }
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        auto it = entries_.find(section + "." + key);
        if (it == entries_.end()) return fallback;
        const std::string& v = it->second;
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        throw ConfigError("config key [" + section + "] " + key + ": not a boolean");
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

    // FNV-1a over the normalized entries, for the run manifest.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](const std::string& s) {
            for (unsigned char ch : s) {
                h ^= ch;
                h *= 0x100000001b3ULL;
            }
            h ^= 0x1f;
            h *= 0x100000001b3ULL;
        };
        for (const auto& [k, v] : entries_) {
            mix(k);
            mix(v);
        }
        return h;
    }

private:
    static std::string strip_comment(const std::string& s) {
        auto pos = s.find_first_of("#;");
        return pos == std::string::npos ? s : s.substr(0, pos);
    }
    static std::string strip(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> entries_;
};

// Device parameters from the [device] section.  Keys mirror the DeviceParams
// fields with unit suffixes: omega_e_hz, kappa_hz, kappa_ext_hz, omega_m_hz,
// kappa_m_hz, n_m, g0_hz, g_disp_hz_per_nm, x_zp_fm.  Missing keys keep the
// published defaults.
inline DeviceParams device_from_config(const Config& cfg) {
    DeviceParams d;
    d.omega_e = from_hz(cfg.get_double("device", "omega_e_hz", to_hz(d.omega_e)));
    d.kappa = from_hz(cfg.get_double("device", "kappa_hz", to_hz(d.kappa)));
    if (cfg.has("device", "kappa_ext_hz"))
        d.kappa_ext = from_hz(cfg.get_double("device", "kappa_ext_hz"));
    else
        d.kappa_ext = cfg.get_double("device", "kappa_ext_ratio", 0.92) * d.kappa;
    d.omega_m = from_hz(cfg.get_double("device", "omega_m_hz", to_hz(d.omega_m)));
    d.kappa_m = from_hz(cfg.get_double("device", "kappa_m_hz", to_hz(d.kappa_m)));
    d.n_m = cfg.get_double("device", "n_m", d.n_m);
    d.g0 = from_hz(cfg.get_double("device", "g0_hz", to_hz(d.g0)));
    d.G_disp = from_hz(cfg.get_double("device", "g_disp_hz_per_nm", to_hz(d.G_disp) * 1e-9)) / 1e-9;
    d.x_zp = cfg.get_double("device", "x_zp_fm", d.x_zp * 1e15) * 1e-15;
    return d;
}

} // namespace modeconv
