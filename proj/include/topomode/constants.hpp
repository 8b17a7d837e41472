#pragma once

namespace topomode::constants {

// SI values, CODATA 2018.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double mu_bohr = 9.2740100783e-24;    // J/T
inline constexpr double pi = 3.14159265358979323846;

// Mass of 87Rb (CODATA-derived); the default setups use the rounded
// historical value 1.44e-25 kg instead, selectable at the interface.
inline constexpr double mass_rb87_codata = 1.44316060e-25; // kg

/// Magnetic field gradient: gauss/cm -> tesla/m.
inline constexpr double gauss_per_cm_to_tesla_per_m = 1e-2;

} // namespace topomode::constants
