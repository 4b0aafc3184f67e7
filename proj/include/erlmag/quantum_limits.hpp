#pragma once

#include <string>
#include <vector>

#include "erlmag/quantity.hpp"

namespace erlmag {

// Alkali-vapor parameters feeding the SERF noise floor. No built-in species
// values ship with the library; load them from a parameter file.
struct SpeciesParams {
    std::string label;
    double gamma_per_T_s;  // gyromagnetic ratio, 1/(T s)
    double v_bar_m_s;      // mean thermal velocity
    double sigma_SD_m2;    // spin-destruction cross-section
};

SpeciesParams load_species_json(const std::string& text);

// Spin-projection/self-field trade-off coefficients. C and D are fixed by
// the gyromagnetic ratio; C*D/mu0 = 4 hbar/3 independent of gamma.
struct SpnMsiConfig {
    double gamma_per_T_s;

    double C() const;  // 2/gamma, units T s
    double D() const;  // 2 hbar gamma mu0 / 3, units T m^3
};

struct SpnMsiBound {
    Quantity bound;  // action
    Quantity x_opt;  // s/m^3, argmin of the trade-off
};

// One named limit constant for table display.
struct BoundResult {
    Quantity value;
    std::string bound_name;
    std::string saturation_condition;
};

namespace formulas {

inline double spn_msi_er(double x, double C, double D, double mu0) {
    return (C * C / x + D * D * x) / (2.0 * mu0);
}

}  // namespace formulas

// Flux-sensor floor: S_phi/(2L) >= hbar.
Quantity tc_limit();

// Depolarization-backed floor for nanoscale sensors, alpha hbar with
// alpha ~ 1/2 by default.
Quantity nvd_limit(double alpha = 0.5);

// v_bar sigma_SD/(gamma^2 V): spin-destruction-limited field PSD floor.
Quantity opm_serf_sb_floor(const SpeciesParams& p, const Quantity& volume);

// v_bar sigma_SD/(2 mu0 gamma^2): the volume-independent energy form.
Quantity opm_serf_limit(const SpeciesParams& p);

// (C^2/x + D^2 x)/(2 mu0) evaluated at the spin-noise parameter
// x = T <dJy^2>/V (dimension s/m^3).
Quantity spn_msi_er(const Quantity& x, const SpnMsiConfig& cfg);

// Minimum of the trade-off: 4 hbar/3 at x_opt = C/D = 3/(hbar gamma^2 mu0).
SpnMsiBound spn_msi_bound(const SpnMsiConfig& cfg);

// Field rms produced by the ensemble's own transverse moment fluctuation,
// 2 hbar gamma mu0 dJy/(3V), uniformly magnetized sphere model.
Quantity self_dipole_field_noise(double djy, double gamma_per_T_s,
                                 const Quantity& volume);

// Smallest field measurable in duration T over volume V when the field's
// own magnetostatic energy must drive the detector state around:
// B_min = sqrt(pi hbar mu0/(V T)), i.e. B_min^2 V T/(2 mu0) = pi hbar/2.
Quantity ml_min_field(const Quantity& volume, const Quantity& duration);

// Perturbative variant on top of a bias field B0:
// dB = pi hbar mu0/(2 B0 V T), so dB B0 V T/mu0 = pi hbar/2.
Quantity ml_perturbative_min(const Quantity& b0, const Quantity& volume,
                             const Quantity& duration);

// One-bit messaging floor for a sphere of radius R read out after the
// light-crossing time: with V = 4 pi R^3/3 and T_m = R/c,
// B_min = sqrt(2 mu0 hbar/(2 pi V T_m)), i.e. B_min^2 V T_m/(2 mu0) = hbar/(2 pi).
Quantity bb_min_field(const Quantity& radius);

// Resolvable fractional increment on a field beta times the minimum:
// prefactor * beta * exp(-beta^2). Derived for beta >= 1 only; smaller
// beta is rejected. The proportionality constant is not pinned down by the
// derivation, so it is exposed as an adjustable prefactor.
double bb_resolvable_increment(double beta, double prefactor = 1.0);

// The named limit constants, in display order, with saturation notes.
std::vector<BoundResult> limit_table();

}  // namespace erlmag
