#pragma once

// Test-side quadrature oracle for the variational machinery: the ansatz
// profiles and their derivatives written out directly, evaluated by the
// generic 2-D Gauss-Legendre integrator. Checks the closed-form Gaussian
// moment expressions through an independent route.

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "topomode/quadrature.hpp"
#include "topomode/variational.hpp"

namespace quad_oracle {

struct Profile {
    topomode::ModeIndex idx;
    double u, v;

    int m() const { return idx.m; }

    double value(double rho, double zeta) const {
        using topomode::ModeIndex;
        const double pi3 = oracle::pi * oracle::pi * oracle::pi;
        const double gauss = std::exp(-0.5 * (u * rho * rho + v * zeta * zeta));
        if (idx == ModeIndex::ground()) return std::pow(u * u * v / pi3, 0.25) * gauss;
        if (idx == ModeIndex::angular()) return u * std::pow(v / pi3, 0.25) * rho * gauss;
        if (idx == ModeIndex::axial())
            return std::pow(4.0 * u * u * v * v * v / pi3, 0.25) * zeta * gauss;
        return std::pow(u * u * v / pi3, 0.25) * (1.0 - u * rho * rho) * gauss;
    }

    double drho(double rho, double zeta) const {
        using topomode::ModeIndex;
        const double val = value(rho, zeta);
        if (idx == ModeIndex::angular()) return (1.0 / rho - u * rho) * val;
        if (idx == ModeIndex::radial()) {
            const double pi3 = oracle::pi * oracle::pi * oracle::pi;
            const double gauss = std::exp(-0.5 * (u * rho * rho + v * zeta * zeta));
            const double pref = std::pow(u * u * v / pi3, 0.25);
            return pref * (-2.0 * u * rho - u * rho * (1.0 - u * rho * rho)) * gauss;
        }
        return -u * rho * val;
    }

    double dzeta(double rho, double zeta) const {
        using topomode::ModeIndex;
        const double val = value(rho, zeta);
        if (idx == topomode::ModeIndex::axial()) return (1.0 / zeta - v * zeta) * val;
        return -v * zeta * val;
    }
};

inline double energy(const Profile& p, double g, double lambda) {
    const double rho_max = 10.0 / std::sqrt(p.u);
    const double zeta_max = 10.0 / std::sqrt(p.v);
    auto f = [&](double rho, double zeta) {
        const double val = p.value(rho, zeta);
        const double dr = p.drho(rho, zeta);
        const double dz = p.dzeta(rho, zeta);
        const double vr = val / rho; // angular kinetic term, finite for the m = 1 profile
        const double ang = p.m() == 0 ? 0.0 : p.m() * p.m() * vr * vr;
        const double kin = 0.5 * (dr * dr + ang + dz * dz);
        const double pot = 0.5 * (rho * rho + lambda * lambda * zeta * zeta) * val * val;
        const double intr = 0.5 * g * val * val * val * val;
        return (kin + pot + intr) * rho;
    };
    return 2.0 * oracle::pi *
           topomode::quadrature::integrate_2d(f, 0.0, rho_max, -zeta_max, zeta_max, 1e-9, 32, 7)
               .value;
}

inline double norm(const Profile& p) {
    const double rho_max = 10.0 / std::sqrt(p.u);
    const double zeta_max = 10.0 / std::sqrt(p.v);
    auto f = [&](double rho, double zeta) {
        const double val = p.value(rho, zeta);
        return val * val * rho;
    };
    return 2.0 * oracle::pi *
           topomode::quadrature::integrate_2d(f, 0.0, rho_max, -zeta_max, zeta_max, 1e-10, 32, 7)
               .value;
}

inline double density_product(const Profile& a, const Profile& b) {
    const double rho_max = 10.0 / std::sqrt(std::min(a.u, b.u));
    const double zeta_max = 10.0 / std::sqrt(std::min(a.v, b.v));
    auto f = [&](double rho, double zeta) {
        const double va = a.value(rho, zeta);
        const double vb = b.value(rho, zeta);
        return va * va * vb * vb * rho;
    };
    return 2.0 * oracle::pi *
           topomode::quadrature::integrate_2d(f, 0.0, rho_max, -zeta_max, zeta_max, 1e-10, 32, 7)
               .value;
}

inline double mode_overlap(const Profile& a, const Profile& b) {
    const double rho_max = 10.0 / std::sqrt(std::min(a.u, b.u));
    const double zeta_max = 10.0 / std::sqrt(std::min(a.v, b.v));
    auto f = [&](double rho, double zeta) {
        return a.value(rho, zeta) * b.value(rho, zeta) * rho;
    };
    return 2.0 * oracle::pi *
           topomode::quadrature::integrate_2d(f, 0.0, rho_max, -zeta_max, zeta_max, 1e-9, 32, 7)
               .value;
}

} // namespace quad_oracle
