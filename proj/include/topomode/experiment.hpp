#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "topomode/constants.hpp"
#include "topomode/errors.hpp"
#include "topomode/order_parameter.hpp"
#include "topomode/parallel.hpp"
#include "topomode/variational.hpp"

namespace topomode {

/// Everything needed to map a laboratory configuration onto the
/// dimensionless two-mode equations.
struct PhysicalSetup {
    AtomSpecies species;
    TrapConfig trap;
    double gF_mF = 1.0; // product of gyromagnetic factor and magnetic quantum number
    ModeIndex excited_mode = ModeIndex::radial();

    void validate() const {
        species.validate();
        trap.validate();
        excited_mode.validate();
        if (!(gF_mF > 0)) throw std::invalid_argument("setup: gF_mF must be positive");
    }
    double anisotropy() const { return trap.anisotropy(); }
    double oscillator_length() const { return trap.oscillator_length(species.mass_kg); }
    /// Dimensionless mean-field coupling g = 4 pi (N - 1) a_s / l_r.
    double coupling_g() const {
        return 4.0 * constants::pi * static_cast<double>(species.atom_number - 1) *
               species.scattering_length_m / oscillator_length();
    }
};

/// 87Rb reference setup: m0 = 1.44e-25 kg, a_s = 6 nm, omega_r = 2 pi 120 Hz,
/// omega_z = 2 pi 24 Hz, N = 1e4. Pass codata_mass=true for the tabulated mass.
inline PhysicalSetup rb87_reference_setup(bool codata_mass = false) {
    PhysicalSetup s;
    s.species.mass_kg = codata_mass ? constants::mass_rb87_codata : 1.44e-25;
    s.species.scattering_length_m = 6e-9;
    s.species.atom_number = 10000;
    s.trap.omega_r = 2.0 * constants::pi * 120.0;
    s.trap.omega_z = 2.0 * constants::pi * 24.0;
    return s;
}

struct DrivenExperiment {
    PhysicalSetup setup;
    double field_gradient_gauss_per_cm = 0; // quadrupole amplitude A
    double detuning_hz = 0;                 // (drive minus transition frequency) / 2 pi

    void validate() const {
        setup.validate();
        if (!(field_gradient_gauss_per_cm >= 0))
            throw std::invalid_argument("experiment: field gradient must be >= 0");
        if (!std::isfinite(detuning_hz))
            throw std::invalid_argument("experiment: detuning must be finite");
    }
};

/// Both minimized modes of a setup.
struct SetupModes {
    VariationalMode ground, excited;
};

inline SetupModes setup_modes(const PhysicalSetup& setup, ModeCache& cache) {
    setup.validate();
    const double g = setup.coupling_g();
    const double lambda = setup.anisotropy();
    return {cache.get(ModeIndex::ground(), g, lambda),
            cache.get(setup.excited_mode, g, lambda)};
}

/// Interaction amplitude alpha_jk in rad/s for minimized modes j, k.
inline double alpha(const PhysicalSetup& setup, const ModeIndex& j, const ModeIndex& k,
                    ModeCache& cache) {
    setup.validate();
    const double g = setup.coupling_g();
    const double lambda = setup.anisotropy();
    const auto mj = cache.get(j, g, lambda);
    const auto mk = cache.get(k, g, lambda);
    return g * setup.trap.omega_r * interaction_amplitude(mj, mk);
}

/// Transition frequency (E_p - E_0) omega_r in rad/s from the nonlinear eigenvalues.
inline double transition_frequency(const PhysicalSetup& setup, const ModeIndex& p,
                                   ModeCache& cache) {
    if (p == ModeIndex::ground())
        throw std::invalid_argument("transition_frequency: excited mode must differ from ground");
    setup.validate();
    const double g = setup.coupling_g();
    const double lambda = setup.anisotropy();
    const auto ground = cache.get(ModeIndex::ground(), g, lambda);
    const auto excited = cache.get(p, g, lambda);
    return (excited.eigenvalue - ground.eigenvalue) * setup.trap.omega_r;
}

/// Field coupling beta in rad/s for a quadrupole gradient of A gauss/cm:
/// beta = gF mF mu_B A l_r J / hbar with J the dimensionless overlap.
/// Linear in A; signed by the overlap orientation.
inline double quad_beta(const PhysicalSetup& setup, double gradient_gauss_per_cm,
                        const ModeIndex& p, ModeCache& cache) {
    setup.validate();
    if (!(gradient_gauss_per_cm >= 0))
        throw std::invalid_argument("quad_beta: gradient must be >= 0");
    const double g = setup.coupling_g();
    const double lambda = setup.anisotropy();
    const auto ground = cache.get(ModeIndex::ground(), g, lambda);
    const auto excited = cache.get(p, g, lambda);
    const double overlap = quadrupole_overlap(ground, excited);
    const double gradient_si = gradient_gauss_per_cm * constants::gauss_per_cm_to_tesla_per_m;
    return setup.gF_mF * constants::mu_bohr * gradient_si * setup.oscillator_length() * overlap /
           constants::hbar;
}

/// The dimensionless parameters of a driven experiment plus the rate that
/// converts t' into seconds.
struct DimensionlessMap {
    DimensionlessParams params;
    double alpha_p0_rad_s = 0;
    double alpha_0p_rad_s = 0;
    double beta_rad_s = 0;
    double beta_per_gradient = 0; // rad/s per gauss/cm, signed
};

inline DimensionlessMap dimensionless_params(const DrivenExperiment& exp, ModeCache& cache) {
    exp.validate();
    const auto& setup = exp.setup;
    const double g = setup.coupling_g();
    const double lambda = setup.anisotropy();
    const auto ground = cache.get(ModeIndex::ground(), g, lambda);
    const auto excited = cache.get(setup.excited_mode, g, lambda);

    DimensionlessMap out;
    out.alpha_0p_rad_s = g * setup.trap.omega_r * interaction_amplitude(ground, excited);
    out.alpha_p0_rad_s = g * setup.trap.omega_r * interaction_amplitude(excited, ground);
    if (!(out.alpha_p0_rad_s > 0))
        throw MinimizationFailure("dimensionless_params: nonpositive time-scale amplitude");

    const double overlap = quadrupole_overlap(ground, excited);
    out.beta_per_gradient = setup.gF_mF * constants::mu_bohr *
                            constants::gauss_per_cm_to_tesla_per_m *
                            setup.oscillator_length() * overlap / constants::hbar;
    out.beta_rad_s = out.beta_per_gradient * exp.field_gradient_gauss_per_cm;

    out.params.a = out.alpha_0p_rad_s / out.alpha_p0_rad_s;
    out.params.b = std::abs(out.beta_rad_s) / out.alpha_p0_rad_s;
    out.params.delta = 2.0 * constants::pi * exp.detuning_hz / out.alpha_p0_rad_s;
    return out;
}

struct FieldSweepRow {
    double gradient_gauss_per_cm = 0;
    double b = 0;
    EtaEstimate estimate;
};

/// Order parameter against the field gradient at fixed detuning. The
/// variational minimization happens once, before the grid fans out.
inline std::vector<FieldSweepRow> eta_vs_gradient(const PhysicalSetup& setup, double detuning_hz,
                                                  const std::vector<double>& gradients,
                                                  const AveragingConfig& cfg, ModeCache& cache,
                                                  unsigned workers = 0) {
    if (!std::is_sorted(gradients.begin(), gradients.end()))
        throw std::invalid_argument("eta_vs_gradient: gradient grid must be sorted");
    DrivenExperiment probe{setup, 0.0, detuning_hz};
    const auto map0 = dimensionless_params(probe, cache);
    const double b_per_gradient = std::abs(map0.beta_per_gradient) / map0.alpha_p0_rad_s;

    std::vector<FieldSweepRow> rows(gradients.size());
    parallel_for(gradients.size(), workers, [&](std::size_t i) {
        rows[i].gradient_gauss_per_cm = gradients[i];
        rows[i].b = b_per_gradient * gradients[i];
        DimensionlessParams p{map0.params.a, rows[i].b, map0.params.delta};
        try {
            rows[i].estimate = eta(p, ModeAmplitudes{}, cfg);
        } catch (const StepFailure&) {
            rows[i].estimate.eta = std::numeric_limits<double>::quiet_NaN();
            rows[i].estimate.converged = false;
        }
    });
    return rows;
}

/// Critical point in the field gradient (gauss/cm).
struct CriticalField {
    double gradient_critical = 0;
    double b_critical = 0;
    double a = 0, delta = 0;
    double alpha_p0_rad_s = 0;
    double bracket_width = 0; // in gauss/cm
    CriticalKind kind = CriticalKind::Jump;
    double eta_below = 0, eta_above = 0;
};

/// Bisection in A; the linear map A -> b makes this a rescaled find_critical_b.
inline CriticalField find_critical_gradient(const PhysicalSetup& setup, double detuning_hz,
                                            double gradient_lo, double gradient_hi,
                                            double tol_gradient, const AveragingConfig& cfg,
                                            ModeCache& cache, double jump_threshold = 0.1) {
    if (!(gradient_lo >= 0 && gradient_hi > gradient_lo))
        throw std::invalid_argument("find_critical_gradient: bad bracket");
    DrivenExperiment probe{setup, 0.0, detuning_hz};
    const auto map0 = dimensionless_params(probe, cache);
    const double b_per_gradient = std::abs(map0.beta_per_gradient) / map0.alpha_p0_rad_s;

    const auto cp = find_critical_b(map0.params.a, map0.params.delta,
                                    b_per_gradient * gradient_lo, b_per_gradient * gradient_hi,
                                    b_per_gradient * tol_gradient, cfg, jump_threshold);
    CriticalField out;
    out.gradient_critical = cp.b_critical / b_per_gradient;
    out.b_critical = cp.b_critical;
    out.a = map0.params.a;
    out.delta = map0.params.delta;
    out.alpha_p0_rad_s = map0.alpha_p0_rad_s;
    out.bracket_width = cp.bracket_width / b_per_gradient;
    out.kind = cp.kind;
    out.eta_below = cp.eta_below;
    out.eta_above = cp.eta_above;
    return out;
}

} // namespace topomode
