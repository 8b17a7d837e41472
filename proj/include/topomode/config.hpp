#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "topomode/csv.hpp"
#include "topomode/errors.hpp"

namespace topomode::io {

/// Flat run configuration mirrored by the INI file and the CLI flags.
/// Unknown sections or keys are rejected at parse time.
struct RunConfig {
    // [dynamics]
    double a = 1.0, b = 0.0, delta = 0.0;
    double horizon = 50.0;
    double tol = 1e-10;
    double sample_dt = 0.0;
    bool lab_frame = false;
    bool linear = false;
    double init_c0_re = 1.0, init_c0_im = 0.0, init_cp_re = 0.0, init_cp_im = 0.0;
    // [averaging]
    double max_horizon = 2000.0;
    double tolerance = 1e-3;
    double integrator_tol = 1e-10;
    double samples_per_period = 200.0;
    // [sweep]
    double b_min = 0.0, b_max = 1.0;
    long sweep_points = 21;
    // [critical]
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double tol_b = 5e-4;
    double jump_threshold = 0.1;
    // [trap]
    double omega_r_hz = 120.0, omega_z_hz = 24.0;
    // [atom]
    double mass_kg = 1.44e-25;
    bool codata_mass = false;
    double scattering_length_nm = 6.0;
    long atom_number = 10000;
    double gf_mf = 1.0;
    // [field]
    double detuning_hz = 0.0;
    double gradient_min = 0.0, gradient_max = 0.2;
    long field_points = 41;
    double field_bracket_lo = 0.0, field_bracket_hi = 0.0;
    double tol_gradient = 5e-4;
    // [output]
    std::string out_dir = ".";
    bool write_json = false;
    bool write_svg = false;
    long workers = 0;

    bool operator==(const RunConfig&) const = default;
};

namespace config_detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

inline double to_double(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: bad number for " + where + ": '" + v + "'");
    return x;
}

inline long to_long(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: bad integer for " + where + ": '" + v + "'");
    return x;
}

inline bool to_bool(const std::string& v, const std::string& where) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("config: bad boolean for " + where + ": '" + v + "'");
}

inline void apply(RunConfig& c, const std::string& sec, const std::string& key,
                  const std::string& val) {
    const std::string where = sec + "." + key;
    auto d = [&] { return to_double(val, where); };
    auto l = [&] { return to_long(val, where); };
    auto f = [&] { return to_bool(val, where); };

    if (sec == "dynamics") {
        if (key == "a") c.a = d();
        else if (key == "b") c.b = d();
        else if (key == "delta") c.delta = d();
        else if (key == "horizon") c.horizon = d();
        else if (key == "tol") c.tol = d();
        else if (key == "sample_dt") c.sample_dt = d();
        else if (key == "lab_frame") c.lab_frame = f();
        else if (key == "linear") c.linear = f();
        else if (key == "init_c0_re") c.init_c0_re = d();
        else if (key == "init_c0_im") c.init_c0_im = d();
        else if (key == "init_cp_re") c.init_cp_re = d();
        else if (key == "init_cp_im") c.init_cp_im = d();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "averaging") {
        if (key == "max_horizon") c.max_horizon = d();
        else if (key == "tolerance") c.tolerance = d();
        else if (key == "integrator_tol") c.integrator_tol = d();
        else if (key == "samples_per_period") c.samples_per_period = d();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "sweep") {
        if (key == "b_min") c.b_min = d();
        else if (key == "b_max") c.b_max = d();
        else if (key == "points") c.sweep_points = l();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "critical") {
        if (key == "bracket_lo") c.bracket_lo = d();
        else if (key == "bracket_hi") c.bracket_hi = d();
        else if (key == "tol_b") c.tol_b = d();
        else if (key == "jump_threshold") c.jump_threshold = d();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "trap") {
        if (key == "omega_r_hz") c.omega_r_hz = d();
        else if (key == "omega_z_hz") c.omega_z_hz = d();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "atom") {
        if (key == "mass_kg") c.mass_kg = d();
        else if (key == "codata_mass") c.codata_mass = f();
        else if (key == "scattering_length_nm") c.scattering_length_nm = d();
        else if (key == "atom_number") c.atom_number = l();
        else if (key == "gf_mf") c.gf_mf = d();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "field") {
        if (key == "detuning_hz") c.detuning_hz = d();
        else if (key == "gradient_min") c.gradient_min = d();
        else if (key == "gradient_max") c.gradient_max = d();
        else if (key == "points") c.field_points = l();
        else if (key == "bracket_lo") c.field_bracket_lo = d();
        else if (key == "bracket_hi") c.field_bracket_hi = d();
        else if (key == "tol_gradient") c.tol_gradient = d();
        else throw ConfigError("config: unknown key " + where);
    } else if (sec == "output") {
        if (key == "dir") c.out_dir = val;
        else if (key == "json") c.write_json = f();
        else if (key == "svg") c.write_svg = f();
        else if (key == "workers") c.workers = l();
        else throw ConfigError("config: unknown key " + where);
    } else {
        throw ConfigError("config: unknown section [" + sec + "]");
    }
}

} // namespace config_detail

inline RunConfig parse_config_text(const std::string& text, RunConfig base = {}) {
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = config_detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config: malformed section at line " + std::to_string(lineno));
            section = config_detail::trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        if (section.empty())
            throw ConfigError("config: key outside a section at line " + std::to_string(lineno));
        const std::string key = config_detail::trim(t.substr(0, eq));
        const std::string val = config_detail::trim(t.substr(eq + 1));
        config_detail::apply(base, section, key, val);
    }
    return base;
}

inline RunConfig parse_config_file(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

/// Canonical serialization: every key, fixed order. Parsing it reproduces
/// the config exactly. The [output] section comes last so the run id can
/// hash everything above it (the computation, not the artifact placement).
inline std::string config_text(const RunConfig& c) {
    std::string s;
    auto kv = [&](const char* k, const std::string& v) {
        s += k;
        s += " = ";
        s += v;
        s += '\n';
    };
    auto kd = [&](const char* k, double v) { kv(k, format_double(v)); };
    auto kl = [&](const char* k, long v) { kv(k, std::to_string(v)); };
    auto kb = [&](const char* k, bool v) { kv(k, format_bool(v)); };

    s += "[dynamics]\n";
    kd("a", c.a);
    kd("b", c.b);
    kd("delta", c.delta);
    kd("horizon", c.horizon);
    kd("tol", c.tol);
    kd("sample_dt", c.sample_dt);
    kb("lab_frame", c.lab_frame);
    kb("linear", c.linear);
    kd("init_c0_re", c.init_c0_re);
    kd("init_c0_im", c.init_c0_im);
    kd("init_cp_re", c.init_cp_re);
    kd("init_cp_im", c.init_cp_im);
    s += "[averaging]\n";
    kd("max_horizon", c.max_horizon);
    kd("tolerance", c.tolerance);
    kd("integrator_tol", c.integrator_tol);
    kd("samples_per_period", c.samples_per_period);
    s += "[sweep]\n";
    kd("b_min", c.b_min);
    kd("b_max", c.b_max);
    kl("points", c.sweep_points);
    s += "[critical]\n";
    kd("bracket_lo", c.bracket_lo);
    kd("bracket_hi", c.bracket_hi);
    kd("tol_b", c.tol_b);
    kd("jump_threshold", c.jump_threshold);
    s += "[trap]\n";
    kd("omega_r_hz", c.omega_r_hz);
    kd("omega_z_hz", c.omega_z_hz);
    s += "[atom]\n";
    kd("mass_kg", c.mass_kg);
    kb("codata_mass", c.codata_mass);
    kd("scattering_length_nm", c.scattering_length_nm);
    kl("atom_number", c.atom_number);
    kd("gf_mf", c.gf_mf);
    s += "[field]\n";
    kd("detuning_hz", c.detuning_hz);
    kd("gradient_min", c.gradient_min);
    kd("gradient_max", c.gradient_max);
    kl("points", c.field_points);
    kd("bracket_lo", c.field_bracket_lo);
    kd("bracket_hi", c.field_bracket_hi);
    kd("tol_gradient", c.tol_gradient);
    s += "[output]\n";
    kv("dir", c.out_dir);
    kb("json", c.write_json);
    kb("svg", c.write_svg);
    kl("workers", c.workers);
    return s;
}

/// The computation-defining part: everything up to the [output] section.
inline std::string config_text_core(const RunConfig& c) {
    const std::string full = config_text(c);
    const auto pos = full.find("[output]\n");
    return full.substr(0, pos);
}

} // namespace topomode::io
