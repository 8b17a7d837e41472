#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "topomode/errors.hpp"
#include "topomode/ode.hpp"

namespace topomode {

using Complex = std::complex<double>;

/// Instantaneous amplitudes (c0, cp) of the ground and excited condensate modes.
/// |c0|^2 + |cp|^2 = 1 up to integration tolerance.
struct ModeAmplitudes {
    Complex c0{1.0, 0.0};
    Complex cp{0.0, 0.0};

    double n0() const { return std::norm(c0); }
    double np() const { return std::norm(cp); }
    double norm_sq() const { return std::norm(c0) + std::norm(cp); }

    bool finite() const {
        return std::isfinite(c0.real()) && std::isfinite(c0.imag()) &&
               std::isfinite(cp.real()) && std::isfinite(cp.imag());
    }
};

/// Dimensionless couplings of the two-mode amplitude equations:
/// a = interaction ratio, b = pumping amplitude, delta = detuning,
/// all in units of the excited-state interaction rate that also sets t'.
struct DimensionlessParams {
    double a = 1.0;
    double b = 0.0;
    double delta = 0.0;

    void validate() const {
        if (!(std::isfinite(a) && a >= 0)) throw std::invalid_argument("params: a must be finite and >= 0");
        if (!(std::isfinite(b) && b >= 0)) throw std::invalid_argument("params: b must be finite and >= 0");
        if (!std::isfinite(delta)) throw std::invalid_argument("params: delta must be finite");
    }
};

/// Time-ordered samples of a single integration, reported in the lab frame.
struct Trajectory {
    std::vector<double> times;             // t' >= 0, strictly increasing, times[0] = 0
    std::vector<ModeAmplitudes> states;    // same length, states[0] = init
    DimensionlessParams params;
    ModeAmplitudes init;
};

struct Populations {
    std::vector<double> n0, np;
};

struct IntegrateOptions {
    double sample_dt = 0;            // 0 = automatic (~200 samples per oscillation)
    bool rotating_frame = true;      // integrate the autonomous rotating-frame form
    bool interaction_off = false;    // diagnostic: drop both nonlinear terms
};

namespace detail {

/// Rotating-frame right-hand side; state = (c0, cp_hat) with cp_hat = cp e^{i delta t'}.
inline void rotating_rhs(const DimensionlessParams& p, bool interaction_off,
                         const ode::State<2>& y, ode::State<2>& dydt) {
    const Complex I(0.0, 1.0);
    const double n0 = std::norm(y[0]);
    const double np = std::norm(y[1]);
    const double half_b = 0.5 * p.b;
    if (interaction_off) {
        dydt[0] = -I * (half_b * y[1]);
        dydt[1] = I * p.delta * y[1] - I * (half_b * y[0]);
    } else {
        dydt[0] = -I * (p.a * np * y[0] + half_b * y[1]);
        dydt[1] = -I * ((n0 - p.delta) * y[1] + half_b * y[0]);
    }
}

/// Lab-frame right-hand side, with the explicit e^{+-i delta t'} drive factor.
inline void lab_rhs(const DimensionlessParams& p, bool interaction_off, double t,
                    const ode::State<2>& y, ode::State<2>& dydt) {
    const Complex I(0.0, 1.0);
    const double n0 = std::norm(y[0]);
    const double np = std::norm(y[1]);
    const Complex phase = std::exp(I * (p.delta * t));
    const double half_b = 0.5 * p.b;
    const double a_np = interaction_off ? 0.0 : p.a * np;
    const double n0_eff = interaction_off ? 0.0 : n0;
    dydt[0] = -I * (a_np * y[0] + half_b * phase * y[1]);
    dydt[1] = -I * (n0_eff * y[1] + half_b * std::conj(phase) * y[0]);
}

inline void check_state(const ModeAmplitudes& s, double norm_tol) {
    if (!s.finite()) throw std::invalid_argument("state: non-finite amplitude");
    if (std::abs(s.norm_sq() - 1.0) > norm_tol)
        throw std::invalid_argument("state: |c0|^2 + |cp|^2 deviates from 1 beyond tolerance");
}

/// Sampling interval targeting ~200 points per oscillation of the populations.
inline double auto_sample_dt(const DimensionlessParams& p, double samples_per_period = 200) {
    const double omega = std::max(0.05, std::hypot(p.b, 1.0 + std::abs(p.delta)));
    return 2.0 * 3.14159265358979323846 / (samples_per_period * omega);
}

} // namespace detail

/// Right-hand side of the amplitude equations at time t' (lab frame):
///   dc0/dt' = -i a n_p c0 - (i/2) b e^{+i delta t'} cp
///   dcp/dt' = -i n0 cp   - (i/2) b e^{-i delta t'} c0
inline ModeAmplitudes derivative(const ModeAmplitudes& state, const DimensionlessParams& params,
                                 double t) {
    params.validate();
    if (!std::isfinite(t)) throw std::invalid_argument("derivative: non-finite time");
    detail::check_state(state, 1e-6);
    ode::State<2> y{state.c0, state.cp}, d;
    detail::lab_rhs(params, false, t, y, d);
    return ModeAmplitudes{d[0], d[1]};
}

/// Propagate a state from t0 to t1 (either direction) and return the endpoint.
inline ModeAmplitudes evolve(const DimensionlessParams& params, const ModeAmplitudes& from,
                             double t0, double t1, double tol = 1e-10,
                             const IntegrateOptions& opts = {}) {
    params.validate();
    detail::check_state(from, 1e-6);
    ode::Options oopt;
    oopt.tol = tol;
    if (opts.rotating_frame) {
        const Complex I(0.0, 1.0);
        ode::State<2> y{from.c0, from.cp * std::exp(I * (params.delta * t0))};
        y = ode::solve<2>(
            [&](double, const ode::State<2>& s, ode::State<2>& d) {
                detail::rotating_rhs(params, opts.interaction_off, s, d);
            },
            y, t0, t1, oopt);
        return ModeAmplitudes{y[0], y[1] * std::exp(-I * (params.delta * t1))};
    }
    ode::State<2> y{from.c0, from.cp};
    y = ode::solve<2>(
        [&](double t, const ode::State<2>& s, ode::State<2>& d) {
            detail::lab_rhs(params, opts.interaction_off, t, s, d);
        },
        y, t0, t1, oopt);
    return ModeAmplitudes{y[0], y[1]};
}

/// Adaptive integration over [0, horizon] with uniform dense sampling.
/// Reported states are lab-frame regardless of the integration frame.
inline Trajectory integrate(const DimensionlessParams& params, const ModeAmplitudes& init,
                            double horizon, double tol = 1e-10,
                            const IntegrateOptions& opts = {}) {
    params.validate();
    detail::check_state(init, 1e-6);
    if (!(horizon > 0) || !std::isfinite(horizon))
        throw std::invalid_argument("integrate: horizon must be positive and finite");
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw std::invalid_argument("integrate: tol outside [1e-12, 1e-4]");

    const double dt = opts.sample_dt > 0 ? opts.sample_dt : detail::auto_sample_dt(params);

    Trajectory traj;
    traj.params = params;
    traj.init = init;
    traj.times.push_back(0.0);
    traj.states.push_back(init);

    const Complex I(0.0, 1.0);
    ode::Options oopt;
    oopt.tol = tol;

    double next_t = dt;
    auto emit = [&](double t, const ode::State<2>& y) {
        ModeAmplitudes s;
        if (opts.rotating_frame) {
            s.c0 = y[0];
            s.cp = y[1] * std::exp(-I * (params.delta * t));
        } else {
            s.c0 = y[0];
            s.cp = y[1];
        }
        traj.times.push_back(t);
        traj.states.push_back(s);
    };

    auto observer = [&](const ode::DenseStep<2>& step) {
        while (next_t <= step.t1 + 1e-14) {
            const double t = std::min(next_t, step.t1);
            emit(t, step.eval(t));
            next_t += dt;
        }
        return true;
    };

    ode::State<2> y{init.c0, init.cp};
    if (opts.rotating_frame) {
        ode::solve<2>(
            [&](double, const ode::State<2>& s, ode::State<2>& d) {
                detail::rotating_rhs(params, opts.interaction_off, s, d);
            },
            y, 0.0, horizon, oopt, observer);
    } else {
        ode::solve<2>(
            [&](double t, const ode::State<2>& s, ode::State<2>& d) {
                detail::lab_rhs(params, opts.interaction_off, t, s, d);
            },
            y, 0.0, horizon, oopt, observer);
    }

    if (traj.times.back() < horizon - 1e-12) {
        // horizon not aligned with the sample grid: the final step observer
        // stopped short of it, so the endpoint sample is missing
        const ModeAmplitudes end = evolve(params, traj.states.back(), traj.times.back(), horizon,
                                          tol, opts);
        traj.times.push_back(horizon);
        traj.states.push_back(end);
    }

    const double drift = std::abs(traj.states.back().norm_sq() - 1.0);
    if (drift > 100.0 * tol * horizon + 1e-12)
        throw StepFailure("integrate: normalization drift exceeds bound");
    return traj;
}

/// Pointwise fractional populations n0 = |c0|^2, np = |cp|^2.
inline Populations populations(const Trajectory& traj) {
    if (traj.times.size() != traj.states.size() || traj.times.empty())
        throw std::invalid_argument("populations: malformed trajectory");
    Populations out;
    out.n0.reserve(traj.states.size());
    out.np.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        out.n0.push_back(s.n0());
        out.np.push_back(s.np());
    }
    return out;
}

/// Linear two-level oracle: excited fraction of textbook Rabi flopping,
/// n_p(t') = (b^2 / Omega^2) sin^2(Omega t'/2), Omega = sqrt(b^2 + delta^2).
inline double rabi_reference(double b, double delta, double t) {
    if (b == 0 && delta == 0)
        throw std::invalid_argument("rabi_reference: (b, delta) must not both be zero");
    if (b == 0) return 0.0;
    const double omega2 = b * b + delta * delta;
    const double s = std::sin(0.5 * std::sqrt(omega2) * t);
    return (b * b / omega2) * s * s;
}

} // namespace topomode
