#pragma once

// Independent closed-form oracles for the two-mode dynamics, used by the test
// suites only. Everything here is derived from the conserved quantity of the
// rotating-frame equations written in population-difference / relative-phase
// variables,
//     H(s, x) = (b/2) sqrt(1-s^2) cos x + D s - (1+a) s^2 / 8,
//     D = delta/2 - (1-a)/4,
// with the initial condition s = 1. None of it touches the integrator or the
// averaging code under test.

#include <cmath>
#include <stdexcept>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

/// Complete elliptic integral of the first kind, modulus k, via the
/// arithmetic-geometric mean.
inline double elliptic_k(double k) {
    if (!(k >= 0 && k < 1)) throw std::invalid_argument("elliptic_k: need 0 <= k < 1");
    double a = 1.0, b = std::sqrt(1.0 - k * k);
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double am = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = am;
    }
    return pi / (2.0 * a);
}

/// Order parameter at a = 1, delta = 0: eta = pi / (2 K(2b)) for b < 1/2,
/// exactly zero for b > 1/2 (symmetric full-range oscillation).
inline double eta_resonant(double b) {
    if (b < 0) throw std::invalid_argument("eta_resonant: b < 0");
    if (b == 0) return 1.0;
    if (b < 0.5) return pi / (2.0 * elliptic_k(2.0 * b));
    return 0.0;
}

/// Oscillation period of s at a = 1, delta = 0: 4 K(2b) below threshold,
/// (4/b) K(1/(2b)) above.
inline double period_resonant(double b) {
    if (!(b > 0)) throw std::invalid_argument("period_resonant: b must be > 0");
    if (b < 0.5) return 4.0 * elliptic_k(2.0 * b);
    if (b > 0.5) return 4.0 / b * elliptic_k(1.0 / (2.0 * b));
    throw std::invalid_argument("period_resonant: diverges at b = 1/2");
}

inline double level_d(double a, double delta) { return 0.5 * delta - 0.25 * (1.0 - a); }

/// Blocked-region indicator along the initial level set: G(s) > 0 means the
/// orbit from s = 1 cannot pass through s.
inline double blocked_g(double a, double delta, double b, double s) {
    const double d = level_d(a, delta);
    const double q = d - (1.0 + a) * (1.0 + s) / 8.0;
    return (1.0 - s) * q * q - 0.25 * b * b * (1.0 + s);
}

/// Deepest population difference reached from s = 1: the largest root of
/// blocked_g in [-1, 1), or -1 when nothing blocks the way down.
inline double s_min(double a, double delta, double b) {
    const int n = 200000;
    double hi = 1.0 - 1e-12;
    double ghi = blocked_g(a, delta, b, hi);
    for (int i = 1; i <= n; ++i) {
        const double s = 1.0 - 2.0 * i / n;
        const double g = blocked_g(a, delta, b, s);
        if (ghi <= 0 && g > 0) {
            double lo = s;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (blocked_g(a, delta, b, mid) > 0)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        hi = s;
        ghi = g;
    }
    return -1.0;
}

namespace detail {

inline double bracketing_amplitude(double a, double delta, double s) {
    const double d = level_d(a, delta);
    return 2.0 * std::sqrt((1.0 - s) / (1.0 + s)) *
           std::abs(d - (1.0 + a) * (1.0 + s) / 8.0);
}

inline double golden_max(double a, double delta, double lo, double hi) {
    auto f = [&](double s) { return bracketing_amplitude(a, delta, s); };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace detail

/// Critical pumping amplitude of the regime classifier: the smallest b for
/// which no point of [0, 1) blocks the descent from s = 1, i.e. the maximum
/// of the bracketing amplitude b(s) = 2 sqrt((1-s)/(1+s)) |D - (1+a)(1+s)/8|
/// over s in [0, 1).
inline double critical_b(double a, double delta) {
    const int n = 1 << 16;
    double best_s = 0, best = detail::bracketing_amplitude(a, delta, 0.0);
    for (int i = 1; i < n; ++i) {
        const double s = static_cast<double>(i) / n;
        const double v = detail::bracketing_amplitude(a, delta, s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    const double polished = detail::golden_max(a, delta, std::max(0.0, best_s - 2.0 / n),
                                               std::min(1.0, best_s + 2.0 / n));
    return std::max(best, polished);
}

/// Pumping amplitude of the order-parameter jump: the largest interior local
/// maximum of the bracketing amplitude on (-1, 1), where a pair of turning
/// points annihilates and the orbit reconnects to a much deeper branch.
/// Returns a negative value when no such maximum exists (smooth morphology).
inline double critical_b_jump(double a, double delta) {
    const int n = 400000;
    const double s_lo = -0.999, s_hi = 0.9995;
    double prev2 = detail::bracketing_amplitude(a, delta, s_lo);
    double prev1 = detail::bracketing_amplitude(a, delta, s_lo + (s_hi - s_lo) / n);
    double best = -1.0;
    for (int i = 2; i <= n; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / n;
        const double cur = detail::bracketing_amplitude(a, delta, s);
        if (prev1 > prev2 && prev1 > cur) {
            const double s1 = s_lo + (s_hi - s_lo) * (i - 2) / n;
            best = std::max(best, detail::golden_max(a, delta, s1, s));
        }
        prev2 = prev1;
        prev1 = cur;
    }
    return best;
}

} // namespace oracle
