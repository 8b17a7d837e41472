#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "topomode/constants.hpp"
#include "topomode/errors.hpp"
#include "topomode/quadrature.hpp"

namespace topomode {

/// Cylindrically harmonic trap; frequencies in rad/s.
struct TrapConfig {
    double omega_r = 0;
    double omega_z = 0;

    void validate() const {
        if (!(omega_r > 0 && omega_z > 0))
            throw std::invalid_argument("trap: frequencies must be positive");
    }
    double anisotropy() const { return omega_z / omega_r; }
    double oscillator_length(double mass_kg) const {
        return std::sqrt(constants::hbar / (mass_kg * omega_r));
    }
};

struct AtomSpecies {
    double mass_kg = 0;
    double scattering_length_m = 0;
    long atom_number = 0;

    void validate() const {
        if (!(mass_kg > 0)) throw std::invalid_argument("species: mass must be positive");
        if (!(scattering_length_m > 0))
            throw std::invalid_argument("species: repulsive scattering length required");
        if (atom_number < 2) throw std::invalid_argument("species: need at least two atoms");
    }
    /// Mean-field coupling A_s = 4 pi (N-1) hbar^2 a_s / m0  [J m^3].
    double interaction_strength() const {
        return 4.0 * constants::pi * static_cast<double>(atom_number - 1) *
               constants::hbar * constants::hbar * scattering_length_m / mass_kg;
    }
};

/// Label (n, m, k) of one of the four Gaussian ansatz modes:
/// ground, angular dipole, axial dipole, radial breathing.
struct ModeIndex {
    int n = 0, m = 0, k = 0;

    static constexpr ModeIndex ground() { return {0, 0, 0}; }
    static constexpr ModeIndex angular() { return {0, 1, 0}; }
    static constexpr ModeIndex axial() { return {0, 0, 1}; }
    static constexpr ModeIndex radial() { return {1, 0, 0}; }

    bool operator==(const ModeIndex&) const = default;

    void validate() const {
        if (!(*this == ground() || *this == angular() || *this == axial() || *this == radial()))
            throw std::invalid_argument("mode index outside the four-ansatz family");
    }
    std::string label() const {
        return std::to_string(n) + std::to_string(m) + std::to_string(k);
    }
};

/// One optimized mode: width parameters, variational energy, and the
/// nonlinear eigenvalue (interaction counted twice), in units of hbar omega_r.
struct VariationalMode {
    ModeIndex index;
    double u = 1, v = 1;
    double eigenvalue = 0;
    double variational_energy = 0;
};

namespace variational_detail {

/// Mode-dependent coefficients of the closed-form energy:
/// E(u,v) = kr (u + 1/u) + kz (v + lambda^2 / v) + (g/2) q u sqrt(v) / (2 pi)^{3/2},
/// obtained by Gaussian moments of the energy functional on the ansatz.
struct EnergyCoeffs {
    double kr, kz, quartic;
};

inline EnergyCoeffs coeffs(const ModeIndex& idx) {
    idx.validate();
    if (idx == ModeIndex::ground()) return {0.5, 0.25, 1.0};
    if (idx == ModeIndex::angular()) return {1.0, 0.25, 0.5};
    if (idx == ModeIndex::axial()) return {0.5, 0.75, 0.75};
    return {1.5, 0.25, 0.5}; // radial breathing
}

inline double quartic_prefactor() {
    return std::pow(2.0 * constants::pi, -1.5);
}

} // namespace variational_detail

/// Gross-Pitaevskii energy per particle of the (u, v) ansatz, oscillator units.
inline double variational_energy(const ModeIndex& idx, double u, double v, double g,
                                 double lambda) {
    if (!(u > 0 && v > 0)) throw std::domain_error("variational_energy: widths must be positive");
    if (!(g >= 0)) throw std::invalid_argument("variational_energy: g must be >= 0");
    if (!(lambda > 0)) throw std::invalid_argument("variational_energy: lambda must be positive");
    const auto c = variational_detail::coeffs(idx);
    const double quartic = c.quartic * u * std::sqrt(v) * variational_detail::quartic_prefactor();
    return c.kr * (u + 1.0 / u) + c.kz * (v + lambda * lambda / v) + 0.5 * g * quartic;
}

/// Analytic gradient of variational_energy with respect to (u, v).
inline std::array<double, 2> variational_gradient(const ModeIndex& idx, double u, double v,
                                                  double g, double lambda) {
    const auto c = variational_detail::coeffs(idx);
    const double pref = 0.5 * g * c.quartic * variational_detail::quartic_prefactor();
    return {c.kr * (1.0 - 1.0 / (u * u)) + pref * std::sqrt(v),
            c.kz * (1.0 - lambda * lambda / (v * v)) + pref * 0.5 * u / std::sqrt(v)};
}

/// Minimize the closed-form energy over (u, v) by Newton steps in log widths,
/// restarted from a coarse grid. The reported eigenvalue counts the
/// interaction twice, as the nonlinear eigenproblem requires.
inline VariationalMode minimize_variational(const ModeIndex& idx, double g, double lambda) {
    if (!(g >= 0)) throw std::invalid_argument("minimize_variational: g must be >= 0");
    if (!(lambda > 0)) throw std::invalid_argument("minimize_variational: lambda must be positive");
    idx.validate();
    const auto c = variational_detail::coeffs(idx);
    const double pref = 0.5 * g * c.quartic * variational_detail::quartic_prefactor();

    auto energy = [&](double u, double v) {
        return c.kr * (u + 1.0 / u) + c.kz * (v + lambda * lambda / v) + pref * u * std::sqrt(v);
    };

    double best_u = 0, best_v = 0, best_e = std::numeric_limits<double>::infinity();
    bool found = false;
    for (double u0 : {0.25, 1.0, 4.0}) {
        for (double v0 : {0.25, 1.0, 4.0}) {
            double x = std::log(u0), y = std::log(v0);
            bool ok = false;
            for (int it = 0; it < 200; ++it) {
                const double u = std::exp(x), v = std::exp(y), sv = std::sqrt(v);
                const double gu = c.kr * (1.0 - 1.0 / (u * u)) + pref * sv;
                const double gv = c.kz * (1.0 - lambda * lambda / (v * v)) + pref * 0.5 * u / sv;
                if (std::hypot(gu, gv) < 1e-11) {
                    ok = true;
                    break;
                }
                // gradient and Hessian in log coordinates
                const double gx = u * gu, gy = v * gv;
                const double huu = 2.0 * c.kr / (u * u * u);
                const double huv = pref * 0.5 / sv;
                const double hvv = 2.0 * c.kz * lambda * lambda / (v * v * v) -
                                   pref * 0.25 * u / (v * sv);
                double hxx = u * u * huu + gx;
                double hxy = u * v * huv;
                double hyy = v * v * hvv + gy;
                double dx, dy;
                const double det = hxx * hyy - hxy * hxy;
                if (det > 1e-14 && hxx > 0) {
                    dx = -(hyy * gx - hxy * gy) / det;
                    dy = -(hxx * gy - hxy * gx) / det;
                } else {
                    const double scale = std::max(1.0, std::hypot(gx, gy));
                    dx = -gx / scale;
                    dy = -gy / scale;
                }
                // backtracking on the energy
                const double e0 = energy(u, v);
                double step = 1.0;
                for (int bt = 0; bt < 40; ++bt, step *= 0.5) {
                    const double xu = std::exp(x + step * dx), xv = std::exp(y + step * dy);
                    if (energy(xu, xv) <= e0 + 1e-12) {
                        x += step * dx;
                        y += step * dy;
                        break;
                    }
                }
            }
            if (!ok) continue;
            const double u = std::exp(x), v = std::exp(y);
            const double e = energy(u, v);
            if (e < best_e) {
                best_e = e;
                best_u = u;
                best_v = v;
                found = true;
            }
        }
    }
    if (!found) throw MinimizationFailure("minimize_variational: no start converged");

    // Positive-definite Hessian check at the winner.
    {
        const double u = best_u, v = best_v, sv = std::sqrt(v);
        const double huu = 2.0 * c.kr / (u * u * u);
        const double huv = pref * 0.5 / sv;
        const double hvv = 2.0 * c.kz * lambda * lambda / (v * v * v) - pref * 0.25 * u / (v * sv);
        if (!(huu > 0 && huu * hvv - huv * huv > 0))
            throw MinimizationFailure("minimize_variational: stationary point is not a minimum");
    }

    VariationalMode out;
    out.index = idx;
    out.u = best_u;
    out.v = best_v;
    out.variational_energy = best_e;
    const double quartic =
        c.quartic * best_u * std::sqrt(best_v) * variational_detail::quartic_prefactor();
    out.eigenvalue = best_e + 0.5 * g * quartic;
    return out;
}

/// Expectation of the nonlinear Hamiltonian in the mode: the variational
/// energy plus a second copy of the interaction term.
inline double eigenvalue(const VariationalMode& mode, double g, double lambda) {
    const auto c = variational_detail::coeffs(mode.index);
    const double quartic =
        c.quartic * mode.u * std::sqrt(mode.v) * variational_detail::quartic_prefactor();
    return variational_energy(mode.index, mode.u, mode.v, g, lambda) + 0.5 * g * quartic;
}

/// Ansatz wavefunction at a cylindrical point (r, phi, z) in units of the
/// radial oscillator length; the returned value carries the l_r^{-3/2}
/// normalization implicitly.
inline std::complex<double> wavefunction(const VariationalMode& mode, double r, double phi,
                                         double z) {
    const double u = mode.u, v = mode.v;
    if (!(u > 0 && v > 0)) throw std::domain_error("wavefunction: widths must be positive");
    const double gauss = std::exp(-0.5 * (u * r * r + v * z * z));
    const double pi3 = constants::pi * constants::pi * constants::pi;
    if (mode.index == ModeIndex::ground())
        return std::pow(u * u * v / pi3, 0.25) * gauss;
    if (mode.index == ModeIndex::angular())
        return u * std::pow(v / pi3, 0.25) * r * std::exp(std::complex<double>(0.0, phi)) * gauss;
    if (mode.index == ModeIndex::axial())
        return std::pow(4.0 * u * u * v * v * v / pi3, 0.25) * z * gauss;
    mode.index.validate();
    return std::pow(u * u * v / pi3, 0.25) * (1.0 - u * r * r) * gauss;
}

namespace variational_detail {

/// |phi|^2 expanded as sum of c rho^{2p} zeta^{2q} exp(-u rho^2 - v zeta^2).
struct DensityTerm {
    double c;
    int p, q;
};

inline std::vector<DensityTerm> density_terms(const VariationalMode& m) {
    const double u = m.u, v = m.v;
    const double pi32 = std::pow(constants::pi, 1.5);
    if (m.index == ModeIndex::ground()) return {{u * std::sqrt(v) / pi32, 0, 0}};
    if (m.index == ModeIndex::angular()) return {{u * u * std::sqrt(v) / pi32, 1, 0}};
    if (m.index == ModeIndex::axial()) return {{2.0 * u * v * std::sqrt(v) / pi32, 0, 1}};
    const double c = u * std::sqrt(v) / pi32;
    return {{c, 0, 0}, {-2.0 * u * c, 1, 0}, {u * u * c, 2, 0}};
}

/// int rho^{2p} zeta^{2q} e^{-U rho^2 - V zeta^2} d^3r in cylindrical
/// coordinates (azimuthal 2 pi included).
inline double gaussian_moment(int p, int q, double U, double V) {
    double radial = constants::pi / U; // p = 0
    for (int i = 1; i <= p; ++i) radial *= static_cast<double>(i) / U;
    double axial = std::sqrt(constants::pi / V);
    for (int i = 1; i <= q; ++i) axial *= (2.0 * i - 1.0) / (2.0 * V);
    return radial * axial;
}

} // namespace variational_detail

/// int |phi_a|^2 |phi_b|^2 d^3r in oscillator units, exact by Gaussian moments.
inline double density_overlap(const VariationalMode& a, const VariationalMode& b) {
    const auto ta = variational_detail::density_terms(a);
    const auto tb = variational_detail::density_terms(b);
    const double U = a.u + b.u, V = a.v + b.v;
    double sum = 0;
    for (const auto& x : ta)
        for (const auto& y : tb)
            sum += x.c * y.c * variational_detail::gaussian_moment(x.p + y.p, x.q + y.q, U, V);
    return sum;
}

/// Dimensionless interaction amplitude int |phi_j|^2 (2 |phi_k|^2 - |phi_j|^2) d^3r.
inline double interaction_amplitude(const VariationalMode& j, const VariationalMode& k) {
    return 2.0 * density_overlap(j, k) - density_overlap(j, j);
}

/// Dimensionless quadrupole coupling integral
///   J = int phi_0 phi_p sqrt(rho^2 + 4 zeta^2) d^3r
/// (azimuthal part analytic; zero unless both modes share m = 0).
///
/// Tensor Gauss-Legendre with node doubling, run in the stretched polar
/// coordinates rho = w cos(psi), zeta = (w/2) sin(psi): the field magnitude
/// becomes the smooth factor w, so the node count stays small; in plain
/// (rho, zeta) coordinates the kink at the origin forces n ~ 1e4 per axis.
inline double quadrupole_overlap(const VariationalMode& ground, const VariationalMode& excited,
                                 double rtol = 1e-8) {
    if (excited.index.m != ground.index.m) return 0.0; // e^{i(m'-m)phi} integrates to zero
    const double rho_max = 10.0 / std::sqrt(std::min(ground.u, excited.u));
    const double zeta_max = 10.0 / std::sqrt(std::min(ground.v, excited.v));
    const double w_max = std::hypot(rho_max, 2.0 * zeta_max);
    const double half_pi = 0.5 * constants::pi;
    auto f = [&](double w, double psi) {
        const double rho = w * std::cos(psi);
        const double zeta = 0.5 * w * std::sin(psi);
        const double pa = wavefunction(ground, rho, 0.0, zeta).real();
        const double pb = wavefunction(excited, rho, 0.0, zeta).real();
        return pa * pb * w * rho * (0.5 * w); // field magnitude w, then rho dAREA
    };
    const auto res =
        quadrature::integrate_2d(f, 0.0, w_max, -half_pi, half_pi, rtol, 16, 20);
    return 2.0 * constants::pi * res.value;
}

/// Memoized minimizations keyed by (mode, g, lambda); safe for concurrent use.
class ModeCache {
  public:
    struct Entry {
        double g, lambda;
        VariationalMode mode;
    };

    VariationalMode get(const ModeIndex& idx, double g, double lambda) {
        const Key key{idx.n, idx.m, idx.k, g, lambda};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        const VariationalMode mode = minimize_variational(idx, g, lambda);
        std::lock_guard<std::mutex> lock(mutex_);
        memo_.emplace(key, mode);
        return mode;
    }

    void preload(const Entry& e) {
        std::lock_guard<std::mutex> lock(mutex_);
        memo_.emplace(Key{e.mode.index.n, e.mode.index.m, e.mode.index.k, e.g, e.lambda},
                      e.mode);
    }

    std::vector<Entry> snapshot() const {
        std::lock_guard<std::mutex> lock(mutex_);
        std::vector<Entry> out;
        out.reserve(memo_.size());
        for (const auto& [key, mode] : memo_)
            out.push_back(Entry{std::get<3>(key), std::get<4>(key), mode});
        return out;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return memo_.size();
    }

  private:
    using Key = std::tuple<int, int, int, double, double>;
    mutable std::mutex mutex_;
    std::map<Key, VariationalMode> memo_;
};

} // namespace topomode
