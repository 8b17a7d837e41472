#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "topomode/constants.hpp"
#include "topomode/errors.hpp"
#include "topomode/parallel.hpp"
#include "topomode/two_mode.hpp"

namespace topomode {

/// Protocol knobs for the time averaging behind the order parameter.
struct AveragingConfig {
    double max_horizon = 2000;      // t' cap for a single estimate
    double tolerance = 1e-3;        // convergence tolerance for the averaged estimate
    double integrator_tol = 1e-10;
    double samples_per_period = 200;

    void validate() const {
        if (!(max_horizon >= 50)) throw std::invalid_argument("averaging: max_horizon must be >= 50");
        if (!(tolerance >= 1e-6 && tolerance <= 1e-2))
            throw std::invalid_argument("averaging: tolerance outside [1e-6, 1e-2]");
        if (!(integrator_tol >= 1e-12 && integrator_tol <= 1e-4))
            throw std::invalid_argument("averaging: integrator_tol outside [1e-12, 1e-4]");
        if (!(samples_per_period >= 16))
            throw std::invalid_argument("averaging: samples_per_period too small");
    }
};

/// Time-averaged population difference eta = mean(n0) - mean(np).
struct EtaEstimate {
    double eta = 1.0;
    double mean_n0 = 1.0;
    double mean_np = 0.0;
    double averaging_horizon = 0.0;
    bool converged = false;
    std::optional<double> period_estimate;
};

enum class RegimeLabel { Locked, Unlocked, NearCritical };

inline const char* to_string(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::Locked: return "Locked";
        case RegimeLabel::Unlocked: return "Unlocked";
        default: return "NearCritical";
    }
}

enum class CriticalKind { Jump, SmoothZero };

inline const char* to_string(CriticalKind k) {
    return k == CriticalKind::Jump ? "Jump" : "SmoothZero";
}

struct CriticalPoint {
    double b_critical = 0;
    double bracket_lo = 0, bracket_hi = 0;
    double bracket_width = 0;
    CriticalKind kind = CriticalKind::Jump;
    double eta_below = 0, eta_above = 0;
};

namespace detail {

struct RefinedMinimum {
    double t, s, w; // refined time, value of s, cumulative integral of s
};

/// One augmented integration in the rotating frame carrying the running
/// integral w(t') = int_0^t' (n0 - np) dt''. Samples are uniform in t'.
struct AveragedRun {
    double dt = 0;
    std::vector<double> t, s, w;
    std::vector<RefinedMinimum> minima;
    double s_max = -2, s_min = 2;
    bool crossed = false;   // np exceeded 1/2 at some sample
    double cross_time = -1;

    double w_at(double tq) const {
        // cubic Hermite using w' = s at the sample points
        auto it = std::upper_bound(t.begin(), t.end(), tq);
        std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        if (i + 1 >= t.size()) return w.back();
        const double h = t[i + 1] - t[i];
        const double x = (tq - t[i]) / h;
        const double x2 = x * x, x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * w[i] + (x3 - 2 * x2 + x) * h * s[i] +
               (-2 * x3 + 3 * x2) * w[i + 1] + (x3 - x2) * h * s[i + 1];
    }
};

enum class RunStop { at_crossing, at_enough_periods, full_horizon };

/// Refine the sample triple around index m (local minimum of s) with a parabola.
inline RefinedMinimum refine_minimum(const AveragedRun& run, std::size_t m) {
    const double t0 = run.t[m - 1], t1 = run.t[m], t2 = run.t[m + 1];
    const double s0 = run.s[m - 1], s1 = run.s[m], s2 = run.s[m + 1];
    const double h0 = t1 - t0, h1 = t2 - t1;
    RefinedMinimum out{t1, s1, run.w[m]};
    if (std::abs(h1 - h0) > 1e-9 * h0) return out; // endpoint-adjacent sample, keep raw
    const double denom = s0 - 2 * s1 + s2;
    if (denom <= 0) return out;
    const double shift = 0.5 * h0 * (s0 - s2) / denom;
    out.t = t1 + std::clamp(shift, -h0, h0);
    out.s = s1 - (s0 - s2) * (s0 - s2) / (8 * denom);
    out.w = run.w_at(out.t);
    return out;
}

inline AveragedRun run_averaged(const DimensionlessParams& params, const ModeAmplitudes& init,
                                const AveragingConfig& cfg, RunStop stop) {
    params.validate();
    cfg.validate();
    check_state(init, 1e-6);

    AveragedRun run;
    const double omega_est = std::max(0.05, std::hypot(params.b, 1.0 + std::abs(params.delta)));
    run.dt = 2.0 * constants::pi / (cfg.samples_per_period * omega_est);

    const Complex I(0.0, 1.0);
    ode::Options oopt;
    oopt.tol = cfg.integrator_tol;

    auto push_sample = [&](double t, const ode::State<3>& y) {
        const double sv = std::norm(y[0]) - std::norm(y[1]);
        run.t.push_back(t);
        run.s.push_back(sv);
        run.w.push_back(y[2].real());
        run.s_max = std::max(run.s_max, sv);
        run.s_min = std::min(run.s_min, sv);
        if (sv < 0 && !run.crossed) {
            run.crossed = true;
            run.cross_time = t;
        }
    };

    ode::State<3> y{init.c0, init.cp * std::exp(I * (params.delta * 0.0)), Complex(0.0, 0.0)};
    push_sample(0.0, y);

    double next_t = run.dt;
    std::size_t scan = 1; // next index to test for a local minimum

    auto process_new_samples = [&]() {
        while (scan + 1 < run.t.size()) {
            if (run.s[scan] <= run.s[scan - 1] && run.s[scan] < run.s[scan + 1])
                run.minima.push_back(refine_minimum(run, scan));
            ++scan;
        }
    };

    auto rhs = [&](double, const ode::State<3>& yy, ode::State<3>& d) {
        const double n0 = std::norm(yy[0]);
        const double np = std::norm(yy[1]);
        d[0] = -I * (params.a * np * yy[0] + 0.5 * params.b * yy[1]);
        d[1] = -I * ((n0 - params.delta) * yy[1] + 0.5 * params.b * yy[0]);
        d[2] = Complex(n0 - np, 0.0);
    };

    auto observer = [&](const ode::DenseStep<3>& step) {
        while (next_t <= step.t1 + 1e-14) {
            const double t = std::min(next_t, step.t1);
            push_sample(t, step.eval(t));
            next_t += run.dt;
        }
        process_new_samples();
        if (stop == RunStop::at_crossing && run.crossed) return false;
        if (stop == RunStop::at_enough_periods && run.minima.size() >= 17 &&
            step.t1 >= 0.1 * cfg.max_horizon)
            return false;
        return true;
    };

    y = ode::solve<3>(rhs, y, 0.0, cfg.max_horizon, oopt, observer);
    process_new_samples();
    if (run.t.back() < cfg.max_horizon && stop == RunStop::full_horizon) {
        push_sample(cfg.max_horizon, y);
    }
    return run;
}

/// Minima whose depth matches the first one; successive matches are period marks.
inline std::vector<RefinedMinimum> matched_minima(const AveragedRun& run) {
    std::vector<RefinedMinimum> out;
    if (run.minima.empty()) return out;
    const double range = run.s_max - run.s_min;
    const double tol = std::max(1e-6, 1e-3 * range);
    const double ref = run.minima.front().s;
    for (const auto& m : run.minima)
        if (std::abs(m.s - ref) <= tol) out.push_back(m);
    return out;
}

} // namespace detail

/// Order parameter for one parameter point: the time average of n0 - np over
/// an integer number of detected oscillation periods, falling back to averages
/// over doubling horizons until they settle within cfg.tolerance.
inline EtaEstimate eta(const DimensionlessParams& params, const ModeAmplitudes& init,
                       const AveragingConfig& cfg = {}) {
    const auto run = detail::run_averaged(params, init, cfg, detail::RunStop::at_enough_periods);
    EtaEstimate est;

    const auto marks = detail::matched_minima(run);
    if (marks.size() >= 2) {
        const auto& first = marks.front();
        const auto& last = marks.back();
        const double window = last.t - first.t;
        est.eta = (last.w - first.w) / window;
        est.averaging_horizon = window;
        est.period_estimate = window / static_cast<double>(marks.size() - 1);
        est.converged = true;
    } else {
        // Cesaro fallback over doubling horizons.
        const double t_end = run.t.back();
        double horizon = std::max(50.0, cfg.max_horizon / 32.0);
        double prev = std::numeric_limits<double>::quiet_NaN();
        bool settled = false;
        double used = 0, value = run.w.back() / t_end;
        while (horizon <= t_end + 1e-9) {
            const double h = std::min(horizon, t_end);
            const double avg = run.w_at(h) / h;
            if (std::isfinite(prev) && std::abs(avg - prev) < cfg.tolerance) {
                settled = true;
                value = avg;
                used = h;
                break;
            }
            prev = avg;
            value = avg;
            used = h;
            horizon *= 2;
        }
        est.eta = value;
        est.averaging_horizon = used;
        est.converged = settled;
    }

    est.eta = std::clamp(est.eta, -1.0, 1.0);
    est.mean_n0 = 0.5 * (1.0 + est.eta);
    est.mean_np = 0.5 * (1.0 - est.eta);
    return est;
}

/// Oscillation period of s = n0 - np from the spacing of matched minima,
/// refined by local quadratic interpolation; nullopt with fewer than two minima.
inline std::optional<double> detect_period(const Trajectory& traj) {
    if (traj.times.size() != traj.states.size() || traj.times.size() < 3)
        return std::nullopt;
    detail::AveragedRun run;
    run.t = traj.times;
    run.s.reserve(traj.states.size());
    run.w.assign(traj.states.size(), 0.0); // unused by refinement path below
    for (const auto& st : traj.states) {
        const double sv = st.n0() - st.np();
        run.s.push_back(sv);
        run.s_max = std::max(run.s_max, sv);
        run.s_min = std::min(run.s_min, sv);
    }
    // cumulative trapezoid so refine_minimum's w interpolation stays valid
    for (std::size_t i = 1; i < run.t.size(); ++i)
        run.w[i] = run.w[i - 1] + 0.5 * (run.s[i] + run.s[i - 1]) * (run.t[i] - run.t[i - 1]);
    for (std::size_t i = 1; i + 1 < run.t.size(); ++i)
        if (run.s[i] <= run.s[i - 1] && run.s[i] < run.s[i + 1])
            run.minima.push_back(detail::refine_minimum(run, i));
    const auto marks = detail::matched_minima(run);
    if (marks.size() < 2) return std::nullopt;
    return (marks.back().t - marks.front().t) / static_cast<double>(marks.size() - 1);
}

/// Locked: n0 stays above 1/2 for the whole horizon. Unlocked: np exceeds 1/2
/// at some time. NearCritical: no crossing, yet no period resolves within the
/// cap and the excursion comes within `near_margin` of 1/2.
inline RegimeLabel classify_regime(const DimensionlessParams& params, const ModeAmplitudes& init,
                                   const AveragingConfig& cfg = {}, double near_margin = 0.01) {
    if (std::abs(init.c0 - Complex(1.0, 0.0)) > 1e-9 || std::abs(init.cp) > 1e-9)
        throw std::invalid_argument("classify_regime: defined for the ground-state initial condition");
    const auto run = detail::run_averaged(params, init, cfg, detail::RunStop::at_crossing);
    if (run.crossed) return RegimeLabel::Unlocked;
    const bool period_found = detail::matched_minima(run).size() >= 2;
    const double max_np = 0.5 * (1.0 - run.s_min);
    if (!period_found && max_np > 0.5 - near_margin) return RegimeLabel::NearCritical;
    return RegimeLabel::Locked;
}

struct SweepPoint {
    double b = 0;
    EtaEstimate estimate;
};

/// Order parameter across a pumping-amplitude grid; points are independent.
inline std::vector<SweepPoint> sweep_eta(double a, double delta, const std::vector<double>& b_grid,
                                         const AveragingConfig& cfg = {}, unsigned workers = 0) {
    if (!std::is_sorted(b_grid.begin(), b_grid.end()))
        throw std::invalid_argument("sweep_eta: b grid must be sorted ascending");
    std::vector<SweepPoint> out(b_grid.size());
    parallel_for(b_grid.size(), workers, [&](std::size_t i) {
        out[i].b = b_grid[i];
        DimensionlessParams p{a, b_grid[i], delta};
        try {
            out[i].estimate = eta(p, ModeAmplitudes{}, cfg);
        } catch (const StepFailure&) {
            out[i].estimate = EtaEstimate{};
            out[i].estimate.eta = std::numeric_limits<double>::quiet_NaN();
            out[i].estimate.converged = false;
        }
    });
    return out;
}

namespace detail {

struct CriticalScan {
    std::map<double, bool> crossed;
    std::map<double, EtaEstimate> etas;
    double a, delta;
    AveragingConfig cfg;

    bool cross(double b) {
        auto it = crossed.find(b);
        if (it != crossed.end()) return it->second;
        const auto run = run_averaged(DimensionlessParams{a, b, delta}, ModeAmplitudes{}, cfg,
                                      RunStop::at_crossing);
        return crossed.emplace(b, run.crossed).first->second;
    }

    const EtaEstimate& eta_at(double b) {
        auto it = etas.find(b);
        if (it != etas.end()) return it->second;
        return etas.emplace(b, eta(DimensionlessParams{a, b, delta}, ModeAmplitudes{}, cfg))
            .first->second;
    }
};

} // namespace detail

/// Locate the critical pumping amplitude inside [b_lo, b_hi].
///
/// When the regime classifier differs at the ends, bisect on it; otherwise,
/// when the order parameter differs by more than jump_threshold, bisect on
/// which branch the midpoint's eta is closer to. The result is a Jump when
/// eta changes by more than jump_threshold across the final bracket, else a
/// SmoothZero located where eta first drops to ~0.
inline CriticalPoint find_critical_b(double a, double delta, double b_lo, double b_hi,
                                     double tol_b, const AveragingConfig& cfg = {},
                                     double jump_threshold = 0.1) {
    if (!(b_lo >= 0 && b_hi > b_lo)) throw std::invalid_argument("find_critical_b: bad bracket");
    if (!(tol_b > 0)) throw std::invalid_argument("find_critical_b: tol_b must be positive");
    cfg.validate();

    detail::CriticalScan scan{{}, {}, a, delta, cfg};
    const bool cross_lo = scan.cross(b_lo);
    const bool cross_hi = scan.cross(b_hi);

    double lo = b_lo, hi = b_hi;
    if (cross_lo != cross_hi) {
        while (hi - lo > tol_b) {
            const double mid = 0.5 * (lo + hi);
            if (scan.cross(mid) == cross_lo)
                lo = mid;
            else
                hi = mid;
        }
    } else {
        const double eta_lo0 = scan.eta_at(b_lo).eta;
        const double eta_hi0 = scan.eta_at(b_hi).eta;
        if (std::abs(eta_hi0 - eta_lo0) <= jump_threshold)
            throw InvalidBracket("find_critical_b: ends classify identically and eta shows no jump");
        while (hi - lo > tol_b) {
            const double mid = 0.5 * (lo + hi);
            const double em = scan.eta_at(mid).eta;
            if (std::abs(em - eta_lo0) <= std::abs(em - eta_hi0))
                lo = mid;
            else
                hi = mid;
        }
    }

    CriticalPoint cp;
    cp.bracket_lo = lo;
    cp.bracket_hi = hi;
    cp.bracket_width = hi - lo;
    cp.eta_below = scan.eta_at(lo).eta;
    cp.eta_above = scan.eta_at(hi).eta;
    if (std::abs(cp.eta_below - cp.eta_above) > jump_threshold) {
        cp.kind = CriticalKind::Jump;
        cp.b_critical = 0.5 * (lo + hi);
        return cp;
    }

    // Smooth morphology at the classifier flip: report the first b at which
    // eta has decayed to ~0.
    cp.kind = CriticalKind::SmoothZero;
    const double eta_zero_tol = std::max(cfg.tolerance, 0.01);
    if (scan.eta_at(b_hi).eta <= eta_zero_tol) {
        double zlo = hi, zhi = b_hi;
        if (scan.eta_at(zlo).eta <= eta_zero_tol) {
            cp.b_critical = zlo;
        } else {
            while (zhi - zlo > tol_b) {
                const double mid = 0.5 * (zlo + zhi);
                if (scan.eta_at(mid).eta <= eta_zero_tol)
                    zhi = mid;
                else
                    zlo = mid;
            }
            cp.bracket_lo = zlo;
            cp.bracket_hi = zhi;
            cp.bracket_width = zhi - zlo;
            cp.eta_below = scan.eta_at(zlo).eta;
            cp.eta_above = scan.eta_at(zhi).eta;
            // the descent to zero may itself be discontinuous: a reconnection
            // below n0 = np shows up here, past the smooth classifier flip
            if (std::abs(cp.eta_below - cp.eta_above) > jump_threshold) {
                cp.kind = CriticalKind::Jump;
                cp.b_critical = 0.5 * (zlo + zhi);
            } else {
                cp.b_critical = zhi;
            }
        }
    } else {
        cp.b_critical = 0.5 * (lo + hi);
    }
    return cp;
}

} // namespace topomode
