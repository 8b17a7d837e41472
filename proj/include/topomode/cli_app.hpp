#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topomode/config.hpp"
#include "topomode/csv.hpp"
#include "topomode/errors.hpp"
#include "topomode/experiment.hpp"
#include "topomode/order_parameter.hpp"
#include "topomode/svg.hpp"
#include "topomode/two_mode.hpp"
#include "topomode/variational.hpp"

namespace topomode::cli {

namespace detail {

inline std::string fd(double x) { return io::format_double(x); }

inline DimensionlessParams params_of(const io::RunConfig& c) { return {c.a, c.b, c.delta}; }

inline ModeAmplitudes init_of(const io::RunConfig& c) {
    return {Complex(c.init_c0_re, c.init_c0_im), Complex(c.init_cp_re, c.init_cp_im)};
}

inline AveragingConfig averaging_of(const io::RunConfig& c) {
    AveragingConfig cfg;
    cfg.max_horizon = c.max_horizon;
    cfg.tolerance = c.tolerance;
    cfg.integrator_tol = c.integrator_tol;
    cfg.samples_per_period = c.samples_per_period;
    return cfg;
}

inline PhysicalSetup setup_of(const io::RunConfig& c) {
    PhysicalSetup s;
    s.species.mass_kg = c.codata_mass ? constants::mass_rb87_codata : c.mass_kg;
    s.species.scattering_length_m = c.scattering_length_nm * 1e-9;
    s.species.atom_number = c.atom_number;
    s.trap.omega_r = 2.0 * constants::pi * c.omega_r_hz;
    s.trap.omega_z = 2.0 * constants::pi * c.omega_z_hz;
    s.gF_mF = c.gf_mf;
    return s;
}

inline std::vector<double> linspace(double lo, double hi, long n) {
    if (n < 1) throw ConfigError("grid: need at least one point");
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        xs.push_back(lo);
        return xs;
    }
    for (long i = 0; i < n; ++i)
        xs.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return xs;
}

/// Variational memo cache persisted under TOPOMODE_CACHE_DIR when set.
class PersistentModeCache {
  public:
    PersistentModeCache() {
        if (const char* dir = std::getenv("TOPOMODE_CACHE_DIR")) {
            path_ = std::filesystem::path(dir) / "variational_modes.json";
            load();
        }
    }

    ~PersistentModeCache() { save(); }

    ModeCache& cache() { return cache_; }

  private:
    void load() {
        std::ifstream in(path_);
        if (!in) return;
        try {
            nlohmann::json doc = nlohmann::json::parse(in);
            for (const auto& e : doc) {
                ModeCache::Entry entry;
                entry.g = e.at("g").get<double>();
                entry.lambda = e.at("lambda").get<double>();
                entry.mode.index = ModeIndex{e.at("n").get<int>(), e.at("m").get<int>(),
                                             e.at("k").get<int>()};
                entry.mode.u = e.at("u").get<double>();
                entry.mode.v = e.at("v").get<double>();
                entry.mode.variational_energy = e.at("variational_energy").get<double>();
                entry.mode.eigenvalue = e.at("eigenvalue").get<double>();
                cache_.preload(entry);
                ++loaded_;
            }
        } catch (const std::exception&) {
            // stale or foreign file: recompute rather than fail the run
        }
    }

    void save() {
        if (path_.empty()) return;
        const auto entries = cache_.snapshot();
        if (entries.size() <= loaded_) return;
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& e : entries) {
            doc.push_back({{"n", e.mode.index.n},
                           {"m", e.mode.index.m},
                           {"k", e.mode.index.k},
                           {"g", e.g},
                           {"lambda", e.lambda},
                           {"u", e.mode.u},
                           {"v", e.mode.v},
                           {"variational_energy", e.mode.variational_energy},
                           {"eigenvalue", e.mode.eigenvalue}});
        }
        std::error_code ec;
        std::filesystem::create_directories(path_.parent_path(), ec);
        std::ofstream out(path_);
        if (out) out << doc.dump(1);
    }

    std::filesystem::path path_;
    ModeCache cache_;
    std::size_t loaded_ = 0;
};

struct Artifacts {
    std::string run_id;
    std::filesystem::path csv_path, json_path, svg_path;
};

/// Write the CSV (always), JSON (on flag), SVG (on flag, when a curve exists),
/// returning the artifact locations. File names derive from the content hash
/// of the effective configuration plus the subcommand.
inline Artifacts persist(const io::RunConfig& cfg, const std::string& subcommand,
                         const io::CsvBuilder& csv, const io::Curve* curve,
                         const nlohmann::json& diagnostics) {
    Artifacts art;
    art.run_id = io::content_hash(subcommand + "\n" + io::config_text_core(cfg));

    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    art.csv_path = dir / (art.run_id + ".csv");
    csv.write(art.csv_path.string());

    if (cfg.write_json) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&tt));
        nlohmann::json doc;
        doc["run_id"] = art.run_id;
        doc["timestamp"] = stamp;
        doc["subcommand"] = subcommand;
        doc["config"] = io::config_text(cfg);
        doc["csv"] = csv.str();
        doc["diagnostics"] = diagnostics;
        art.json_path = dir / (art.run_id + ".json");
        std::ofstream out(art.json_path);
        if (!out) throw std::runtime_error("json: cannot open " + art.json_path.string());
        out << doc.dump(1) << '\n';
    }

    if (cfg.write_svg && curve != nullptr) {
        art.svg_path = dir / (art.run_id + ".svg");
        io::emit_plot(*curve, art.svg_path.string());
    }
    return art;
}

inline std::string period_cell(const std::optional<double>& p) {
    return p ? fd(*p) : std::string();
}

// ---- subcommand bodies ----------------------------------------------------

inline int cmd_simulate(const io::RunConfig& cfg) {
    IntegrateOptions opts;
    opts.sample_dt = cfg.sample_dt;
    opts.rotating_frame = !cfg.lab_frame;
    opts.interaction_off = cfg.linear;
    const auto traj = integrate(params_of(cfg), init_of(cfg), cfg.horizon, cfg.tol, opts);
    const auto pops = populations(traj);

    io::CsvBuilder csv({"t", "re_c0", "im_c0", "re_cp", "im_cp", "n0", "np"});
    io::Curve curve;
    curve.x_label = "t'";
    curve.y_label = "n0";
    curve.title = "ground-state population";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        csv.row({fd(traj.times[i]), fd(s.c0.real()), fd(s.c0.imag()), fd(s.cp.real()),
                 fd(s.cp.imag()), fd(pops.n0[i]), fd(pops.np[i])});
        curve.x.push_back(traj.times[i]);
        curve.y.push_back(pops.n0[i]);
    }
    double min_n0 = 2, max_np = -1;
    for (std::size_t i = 0; i < pops.n0.size(); ++i) {
        min_n0 = std::min(min_n0, pops.n0[i]);
        max_np = std::max(max_np, pops.np[i]);
    }
    nlohmann::json diag{{"samples", traj.times.size()}, {"min_n0", min_n0}, {"max_np", max_np}};
    const auto art = persist(cfg, "simulate", csv, &curve, diag);
    std::printf("simulate: a=%s b=%s delta=%s horizon=%s -> %zu samples, min n0=%.6f, "
                "max np=%.6f -> %s\n",
                fd(cfg.a).c_str(), fd(cfg.b).c_str(), fd(cfg.delta).c_str(),
                fd(cfg.horizon).c_str(), traj.times.size(), min_n0, max_np,
                art.csv_path.string().c_str());
    return 0;
}

inline int cmd_eta(const io::RunConfig& cfg) {
    const auto est = eta(params_of(cfg), init_of(cfg), averaging_of(cfg));
    io::CsvBuilder csv({"a", "b", "delta", "eta", "mean_n0", "mean_np", "converged", "period"});
    csv.row({fd(cfg.a), fd(cfg.b), fd(cfg.delta), fd(est.eta), fd(est.mean_n0), fd(est.mean_np),
             io::format_bool(est.converged), period_cell(est.period_estimate)});
    nlohmann::json diag{{"converged", est.converged},
                        {"averaging_horizon", est.averaging_horizon}};
    const auto art = persist(cfg, "eta", csv, nullptr, diag);
    std::printf("eta: a=%s b=%s delta=%s -> eta=%.6f (%s) -> %s\n", fd(cfg.a).c_str(),
                fd(cfg.b).c_str(), fd(cfg.delta).c_str(), est.eta,
                est.converged ? "converged" : "not converged", art.csv_path.string().c_str());
    return 0;
}

inline int cmd_sweep(const io::RunConfig& cfg) {
    const auto grid = linspace(cfg.b_min, cfg.b_max, cfg.sweep_points);
    const auto rows = sweep_eta(cfg.a, cfg.delta, grid, averaging_of(cfg),
                                static_cast<unsigned>(cfg.workers));
    io::CsvBuilder csv({"b", "eta", "converged", "period"});
    io::Curve curve;
    curve.x_label = "b";
    curve.y_label = "eta";
    curve.title = "order parameter vs pumping amplitude";
    std::size_t failures = 0;
    for (const auto& r : rows) {
        csv.row({fd(r.b), fd(r.estimate.eta), io::format_bool(r.estimate.converged),
                 period_cell(r.estimate.period_estimate)});
        if (!r.estimate.converged) ++failures;
        if (std::isfinite(r.estimate.eta)) {
            curve.x.push_back(r.b);
            curve.y.push_back(r.estimate.eta);
        }
    }
    nlohmann::json diag{{"points", rows.size()}, {"non_converged", failures}};
    const auto art = persist(cfg, "sweep", csv, &curve, diag);
    std::printf("sweep: a=%s delta=%s b in [%s, %s] x%ld -> %zu rows (%zu flagged) -> %s\n",
                fd(cfg.a).c_str(), fd(cfg.delta).c_str(), fd(cfg.b_min).c_str(),
                fd(cfg.b_max).c_str(), cfg.sweep_points, rows.size(), failures,
                art.csv_path.string().c_str());
    return 0;
}

inline int cmd_critical(const io::RunConfig& cfg) {
    const auto cp = find_critical_b(cfg.a, cfg.delta, cfg.bracket_lo, cfg.bracket_hi, cfg.tol_b,
                                    averaging_of(cfg), cfg.jump_threshold);
    io::CsvBuilder csv({"a", "delta", "b_critical", "bracket_lo", "bracket_hi", "bracket_width",
                        "kind", "eta_below", "eta_above"});
    csv.row({fd(cfg.a), fd(cfg.delta), fd(cp.b_critical), fd(cp.bracket_lo), fd(cp.bracket_hi),
             fd(cp.bracket_width), to_string(cp.kind), fd(cp.eta_below), fd(cp.eta_above)});
    nlohmann::json diag{{"kind", to_string(cp.kind)}};
    const auto art = persist(cfg, "critical", csv, nullptr, diag);
    std::printf("critical: a=%s delta=%s -> b_c=%.6f (%s, bracket %.6f..%.6f) -> %s\n",
                fd(cfg.a).c_str(), fd(cfg.delta).c_str(), cp.b_critical, to_string(cp.kind),
                cp.bracket_lo, cp.bracket_hi, art.csv_path.string().c_str());
    return 0;
}

inline int cmd_modes(const io::RunConfig& cfg) {
    PersistentModeCache pc;
    const auto setup = setup_of(cfg);
    setup.validate();
    const double g = setup.coupling_g();
    const double lambda = setup.anisotropy();
    io::CsvBuilder csv({"mode", "u", "v", "variational_energy", "eigenvalue"});
    for (const auto& idx : {ModeIndex::ground(), ModeIndex::angular(), ModeIndex::axial(),
                            ModeIndex::radial()}) {
        const auto m = pc.cache().get(idx, g, lambda);
        csv.row({idx.label(), fd(m.u), fd(m.v), fd(m.variational_energy), fd(m.eigenvalue)});
    }
    nlohmann::json diag{{"g", g}, {"lambda", lambda}};
    const auto art = persist(cfg, "modes", csv, nullptr, diag);
    std::printf("modes: g=%.4f lambda=%.4f -> 4 modes -> %s\n", g, lambda,
                art.csv_path.string().c_str());
    return 0;
}

inline int cmd_quadrupole(const io::RunConfig& cfg) {
    PersistentModeCache pc;
    const auto setup = setup_of(cfg);

    if (cfg.field_bracket_hi > cfg.field_bracket_lo) {
        const auto cf = find_critical_gradient(setup, cfg.detuning_hz, cfg.field_bracket_lo,
                                               cfg.field_bracket_hi, cfg.tol_gradient,
                                               averaging_of(cfg), pc.cache(),
                                               cfg.jump_threshold);
        io::CsvBuilder csv({"detuning_hz", "A_critical", "b_critical", "a", "delta",
                            "alpha_p0_rad_s", "kind", "eta_below", "eta_above"});
        csv.row({fd(cfg.detuning_hz), fd(cf.gradient_critical), fd(cf.b_critical), fd(cf.a),
                 fd(cf.delta), fd(cf.alpha_p0_rad_s), to_string(cf.kind), fd(cf.eta_below),
                 fd(cf.eta_above)});
        nlohmann::json diag{{"kind", to_string(cf.kind)}};
        const auto art = persist(cfg, "quadrupole-critical", csv, nullptr, diag);
        std::printf("quadrupole: detuning=%s Hz -> A_c=%.6f G/cm (b_c=%.6f, %s) -> %s\n",
                    fd(cfg.detuning_hz).c_str(), cf.gradient_critical, cf.b_critical,
                    to_string(cf.kind), art.csv_path.string().c_str());
        return 0;
    }

    const auto grid = linspace(cfg.gradient_min, cfg.gradient_max, cfg.field_points);
    DrivenExperiment probe{setup, 0.0, cfg.detuning_hz};
    const auto map0 = dimensionless_params(probe, pc.cache());
    const auto rows = eta_vs_gradient(setup, cfg.detuning_hz, grid, averaging_of(cfg),
                                      pc.cache(), static_cast<unsigned>(cfg.workers));
    io::CsvBuilder csv({"A_gauss_per_cm", "a", "b", "delta", "alpha_p0_rad_s", "eta",
                        "converged"});
    io::Curve curve;
    curve.x_label = "A (G/cm)";
    curve.y_label = "eta";
    curve.title = "order parameter vs quadrupole gradient";
    std::size_t failures = 0;
    for (const auto& r : rows) {
        csv.row({fd(r.gradient_gauss_per_cm), fd(map0.params.a), fd(r.b), fd(map0.params.delta),
                 fd(map0.alpha_p0_rad_s), fd(r.estimate.eta),
                 io::format_bool(r.estimate.converged)});
        if (!r.estimate.converged) ++failures;
        if (std::isfinite(r.estimate.eta)) {
            curve.x.push_back(r.gradient_gauss_per_cm);
            curve.y.push_back(r.estimate.eta);
        }
    }
    nlohmann::json diag{{"points", rows.size()},
                        {"non_converged", failures},
                        {"a", map0.params.a},
                        {"delta", map0.params.delta},
                        {"alpha_p0_rad_s", map0.alpha_p0_rad_s}};
    const auto art = persist(cfg, "quadrupole", csv, &curve, diag);
    std::printf("quadrupole: detuning=%s Hz, A in [%s, %s] x%ld -> a=%.4f delta=%.5f "
                "alpha_p0=%.2f rad/s (%zu flagged) -> %s\n",
                fd(cfg.detuning_hz).c_str(), fd(cfg.gradient_min).c_str(),
                fd(cfg.gradient_max).c_str(), cfg.field_points, map0.params.a,
                map0.params.delta, map0.alpha_p0_rad_s, failures,
                art.csv_path.string().c_str());
    return 0;
}

} // namespace detail

/// Parse arguments, dispatch a subcommand, and return the process exit code:
/// 0 success, 2 validation/configuration error, 3 numerical failure.
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"two-mode condensate dynamics: populations, order parameter, critical points"};
    app.require_subcommand(1);

    io::RunConfig file_defaults;
    std::string config_path;
    io::RunConfig over; // CLI-provided values, applied on top of the file config
    std::vector<std::function<void(io::RunConfig&)>> appliers;

    auto opt = [&](CLI::App* cmd, const std::string& flag, auto member, const char* desc) {
        auto* o = cmd->add_option(flag, over.*member, desc);
        appliers.push_back([o, member, &over](io::RunConfig& c) {
            if (o->count() > 0) c.*member = over.*member;
        });
        return o;
    };
    auto flag = [&](CLI::App* cmd, const std::string& name, auto member, const char* desc) {
        auto* o = cmd->add_flag(name, over.*member, desc);
        appliers.push_back([o, member, &over](io::RunConfig& c) {
            if (o->count() > 0) c.*member = over.*member;
        });
        return o;
    };

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "INI configuration file");
        opt(cmd, "--out-dir", &io::RunConfig::out_dir, "artifact directory");
        flag(cmd, "--json", &io::RunConfig::write_json, "also write a JSON record");
        flag(cmd, "--svg", &io::RunConfig::write_svg, "also write an SVG plot");
        opt(cmd, "--workers", &io::RunConfig::workers, "worker threads (0 = all cores)");
    };
    auto add_dim = [&](CLI::App* cmd) {
        opt(cmd, "--a", &io::RunConfig::a, "interaction ratio");
        opt(cmd, "--delta", &io::RunConfig::delta, "dimensionless detuning");
    };
    auto add_avg = [&](CLI::App* cmd) {
        opt(cmd, "--max-horizon", &io::RunConfig::max_horizon, "averaging horizon cap (t')");
        opt(cmd, "--tolerance", &io::RunConfig::tolerance, "averaging convergence tolerance");
        opt(cmd, "--integrator-tol", &io::RunConfig::integrator_tol, "ODE tolerance");
        opt(cmd, "--samples-per-period", &io::RunConfig::samples_per_period,
            "sampling density");
    };
    auto add_atom_trap = [&](CLI::App* cmd) {
        opt(cmd, "--omega-r-hz", &io::RunConfig::omega_r_hz, "radial trap frequency (Hz)");
        opt(cmd, "--omega-z-hz", &io::RunConfig::omega_z_hz, "axial trap frequency (Hz)");
        opt(cmd, "--mass-kg", &io::RunConfig::mass_kg, "atomic mass (kg)");
        flag(cmd, "--codata-mass", &io::RunConfig::codata_mass, "use the tabulated 87Rb mass");
        opt(cmd, "--scattering-length-nm", &io::RunConfig::scattering_length_nm,
            "s-wave scattering length (nm)");
        opt(cmd, "--atom-number", &io::RunConfig::atom_number, "number of atoms");
        opt(cmd, "--gf-mf", &io::RunConfig::gf_mf, "gF mF product of the trapped state");
    };

    auto* simulate = app.add_subcommand("simulate", "integrate the amplitude equations");
    add_dim(simulate);
    opt(simulate, "--b", &io::RunConfig::b, "pumping amplitude");
    opt(simulate, "--horizon", &io::RunConfig::horizon, "integration span (t')");
    opt(simulate, "--tol", &io::RunConfig::tol, "integration tolerance");
    opt(simulate, "--sample-dt", &io::RunConfig::sample_dt, "sample spacing (0 = auto)");
    flag(simulate, "--lab-frame", &io::RunConfig::lab_frame, "integrate the driven form");
    flag(simulate, "--linear", &io::RunConfig::linear, "drop both interaction terms");
    opt(simulate, "--init-c0-re", &io::RunConfig::init_c0_re, "initial Re c0");
    opt(simulate, "--init-c0-im", &io::RunConfig::init_c0_im, "initial Im c0");
    opt(simulate, "--init-cp-re", &io::RunConfig::init_cp_re, "initial Re cp");
    opt(simulate, "--init-cp-im", &io::RunConfig::init_cp_im, "initial Im cp");
    add_common(simulate);

    auto* etacmd = app.add_subcommand("eta", "time-averaged order parameter at one point");
    add_dim(etacmd);
    opt(etacmd, "--b", &io::RunConfig::b, "pumping amplitude");
    add_avg(etacmd);
    add_common(etacmd);

    auto* sweep = app.add_subcommand("sweep", "order parameter across a pumping grid");
    add_dim(sweep);
    opt(sweep, "--b-min", &io::RunConfig::b_min, "grid start");
    opt(sweep, "--b-max", &io::RunConfig::b_max, "grid end");
    opt(sweep, "--points", &io::RunConfig::sweep_points, "grid size");
    add_avg(sweep);
    add_common(sweep);

    auto* critical = app.add_subcommand("critical", "bisect the critical pumping amplitude");
    add_dim(critical);
    std::vector<double> bracket;
    critical->add_option("--bracket", bracket, "bracket lo,hi")->delimiter(',')->expected(2);
    appliers.push_back([&bracket](io::RunConfig& c) {
        if (bracket.size() == 2) {
            c.bracket_lo = bracket[0];
            c.bracket_hi = bracket[1];
        }
    });
    opt(critical, "--tol-b", &io::RunConfig::tol_b, "bracket tolerance");
    opt(critical, "--jump-threshold", &io::RunConfig::jump_threshold, "eta jump threshold");
    add_avg(critical);
    add_common(critical);

    auto* modes = app.add_subcommand("modes", "optimized variational modes of a setup");
    add_atom_trap(modes);
    add_common(modes);

    auto* quadrupole =
        app.add_subcommand("quadrupole", "order parameter against the field gradient");
    add_atom_trap(quadrupole);
    opt(quadrupole, "--detuning-hz", &io::RunConfig::detuning_hz, "drive detuning (Hz)");
    opt(quadrupole, "--gradient-min", &io::RunConfig::gradient_min, "grid start (G/cm)");
    opt(quadrupole, "--gradient-max", &io::RunConfig::gradient_max, "grid end (G/cm)");
    opt(quadrupole, "--points", &io::RunConfig::field_points, "grid size");
    std::vector<double> fbracket;
    quadrupole->add_option("--bracket", fbracket, "critical-point bracket lo,hi (G/cm)")
        ->delimiter(',')
        ->expected(2);
    appliers.push_back([&fbracket](io::RunConfig& c) {
        if (fbracket.size() == 2) {
            c.field_bracket_lo = fbracket[0];
            c.field_bracket_hi = fbracket[1];
        }
    });
    opt(quadrupole, "--tol-gradient", &io::RunConfig::tol_gradient,
        "bracket tolerance (G/cm)");
    opt(quadrupole, "--jump-threshold", &io::RunConfig::jump_threshold,
        "eta jump threshold");
    add_avg(quadrupole);
    add_common(quadrupole);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        io::RunConfig cfg;
        if (!config_path.empty()) cfg = io::parse_config_file(config_path, cfg);
        for (const auto& apply : appliers) apply(cfg);

        if (simulate->parsed()) return detail::cmd_simulate(cfg);
        if (etacmd->parsed()) return detail::cmd_eta(cfg);
        if (sweep->parsed()) return detail::cmd_sweep(cfg);
        if (critical->parsed()) return detail::cmd_critical(cfg);
        if (modes->parsed()) return detail::cmd_modes(cfg);
        if (quadrupole->parsed()) return detail::cmd_quadrupole(cfg);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidBracket& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace topomode::cli
