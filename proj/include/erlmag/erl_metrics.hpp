#pragma once

#include "erlmag/geometry.hpp"
#include "erlmag/quantity.hpp"

namespace erlmag {

// Dimensionless-core formulas, parameterized on the constants they use so
// they can be exercised in any consistent unit system. The public Quantity
// API below routes through these with the CODATA values.
namespace formulas {

inline double er_general(double sb, double l, double mu0) {
    return sb * (l * l * l) / (2.0 * mu0);
}
inline double er_squid(double sphi, double L) { return sphi / (2.0 * L); }
inline double flux_to_field(double sphi, double A) { return sphi / (A * A); }
inline double moment_to_field(double smu, double d, double mu0) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double gain = mu0 / (two_pi * (d * d * d));
    return smu * gain * gain;
}

}  // namespace formulas

// l rule per geometry: standoff for point sensors, sqrt(area) for planar
// and pickup loops, cbrt(volume) for cells. Linear sensors have no agreed
// rule and are rejected; a loop without a known area cannot produce an l
// and the caller is pointed at er_squid instead.
Quantity effective_linear_dimension(const SensorGeometry& g);

// S_phi/(2L): energy resolution of a flux sensor referred to its pickup
// inductance.
Quantity er_squid(const Quantity& sphi, const Quantity& inductance);

// S_B A^{3/2}/(2 mu0). alpha scales the bound threshold (alpha hbar), not
// the returned value; it is validated here so both live in one place.
Quantity er_area(const Quantity& sb, const Quantity& area, double alpha = 1.0);

// alpha hbar, the threshold the area form is compared against.
Quantity area_bound_threshold(double alpha);

// S_B V/(2 mu0).
Quantity er_volumetric(const Quantity& sb, const Quantity& volume);

// S_B l^3/(2 mu0), the technology-spanning form. er_area and er_volumetric
// delegate here so the geometry coincidences hold exactly.
Quantity er_general(const Quantity& sb, const Quantity& l);

// <dB^2> l^3 T/(2 mu0) for a discrete measurement of rms error dB over
// duration T; equals er_general(dB^2 T, l) by construction.
Quantity er_from_discrete(const Quantity& db, const Quantity& duration,
                          const Quantity& l);

struct ObservedEnergyDecomposition {
    Quantity true_term;  // J, magnetostatic energy of the true field
    Quantity bias_term;  // J, estimator bias; bias_term * T = er_volumetric
};

ObservedEnergyDecomposition observed_energy_decomposition(const Quantity& b_true,
                                                          const Quantity& sb,
                                                          const Quantity& duration,
                                                          const Quantity& volume);

// S_phi/A^2: flux PSD referred to field through the loop area.
Quantity flux_noise_to_field_noise(const Quantity& sphi, const Quantity& area);

// S_mu (mu0/(2 pi d^3))^2: moment PSD referred to the on-axis dipole field
// at standoff d. On-axis is the strongest coupling, so this is the most
// favorable (smallest) equivalent field noise; callers wanting a different
// angular factor can scale the result.
Quantity moment_noise_to_field_noise(const Quantity& smu, const Quantity& distance);

}  // namespace erlmag
