#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "topomode/errors.hpp"

namespace topomode::ode {

template <std::size_t N>
using State = std::array<std::complex<double>, N>;

struct Options {
    double tol = 1e-10;        // local error per unit time, combined abs/rel scale
    double max_step = 1e30;
    double initial_step = 0;   // 0 = automatic
};

/// One accepted step with the data needed for cubic Hermite interpolation.
template <std::size_t N>
struct DenseStep {
    double t0 = 0, t1 = 0;
    State<N> y0{}, y1{};
    State<N> f0{}, f1{};

    State<N> eval(double t) const {
        const double h = t1 - t0;
        const double x = (t - t0) / h;
        const double x2 = x * x, x3 = x2 * x;
        const double h00 = 2 * x3 - 3 * x2 + 1;
        const double h10 = x3 - 2 * x2 + x;
        const double h01 = -2 * x3 + 3 * x2;
        const double h11 = x3 - x2;
        State<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = h00 * y0[i] + (h10 * h) * f0[i] + h01 * y1[i] + (h11 * h) * f1[i];
        return y;
    }
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Embedded 4th-order weights.
inline constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                        e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

} // namespace detail

/// Integrate dy/dt = f(t, y) from t0 to t1 (either direction).
///
/// f has signature f(double t, const State<N>& y, State<N>& dydt).
/// observer(const DenseStep<N>&) is called after every accepted step and may
/// return false to stop early; pass nullptr-like lambda returning true otherwise.
/// Error control: accepted when the RMS of component errors, scaled by
/// tol*max(1,|y|), does not exceed the step size (error per unit time).
template <std::size_t N, class RHS, class Observer>
State<N> solve(RHS&& f, State<N> y, double t0, double t1, const Options& opt, Observer&& observer) {
    if (!(opt.tol > 0)) throw std::invalid_argument("ode::solve: tol must be positive");
    if (t1 == t0) return y;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    using namespace detail;
    State<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    double t = t0;
    f(t, y, k1);

    auto err_per_unit_time = [&](const State<N>& a, const State<N>& b, const State<N>& yref,
                                 double h) {
        double acc = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double scale = opt.tol * std::max(1.0, std::abs(yref[i]));
            const double e = std::abs(a[i] - b[i]) / scale;
            acc += e * e;
        }
        return std::sqrt(acc / N) / h;
    };

    // Initial step from the magnitude of the derivative.
    double h = opt.initial_step > 0 ? std::min(opt.initial_step, span) : 0;
    if (h == 0) {
        double fmag = 0;
        for (std::size_t i = 0; i < N; ++i) fmag = std::max(fmag, std::abs(k1[i]));
        h = std::min({span, 0.01 / std::max(fmag, 1e-4), std::pow(opt.tol, 0.2)});
        h = std::max(h, 1e-8);
    }
    h = std::min(h, opt.max_step);

    double err_prev = 1.0;
    const double eps = std::numeric_limits<double>::epsilon();

    while (dir * (t1 - t) > 0) {
        h = std::min(h, std::abs(t1 - t));
        const double hmin = 32 * eps * std::max(std::abs(t), 1.0);
        if (h < hmin)
            throw StepFailure("ode::solve: step underflow at t=" + std::to_string(t));
        const double hs = dir * h;

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
        f(t + c2 * hs, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * hs, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * hs, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * hs, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                   a65 * k5[i]);
        f(t + hs, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + hs, ynew, k7);

        // 4th-order solution for the error estimate.
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);

        const double err = err_per_unit_time(ynew, ytmp, ynew, h);
        if (err <= 1.0) {
            DenseStep<N> step;
            step.t0 = t;
            step.t1 = t + hs;
            step.y0 = y;
            step.y1 = ynew;
            step.f0 = k1;
            step.f1 = k7;

            t += hs;
            y = ynew;
            k1 = k7; // FSAL

            // PI controller (error per unit time scales as h^4).
            const double fac =
                0.9 * std::pow(std::max(err, 1e-10), -0.2) * std::pow(err_prev, 0.04);
            err_prev = std::max(err, 1e-10);
            h = std::min(h * std::clamp(fac, 0.2, 5.0), opt.max_step);

            if (!observer(step)) return y;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    return y;
}

template <std::size_t N, class RHS>
State<N> solve(RHS&& f, const State<N>& y0, double t0, double t1, const Options& opt = {}) {
    return solve(
        std::forward<RHS>(f), y0, t0, t1, opt, [](const DenseStep<N>&) { return true; });
}

} // namespace topomode::ode
