#pragma once

#include "erlmag/quantity.hpp"
#include "erlmag/weighting.hpp"

namespace erlmag {

struct ZeropointOptions {
    double rel_tol = 1e-9;  // target relative accuracy of the shape integrals
    int threads = 1;        // tail segments evaluated in parallel; results
                            // are byte-identical for every worker count
};

// Verdict of the tail-decay probe: the squared transform must fall faster
// than 1/zeta^4 for the quantum integral and faster than 1/zeta^3 for the
// thermal one. The estimate comes from a log-log fit of oscillation-
// envelope maxima over zeta in [1e3, 1e4]; admissible weightings decay with
// even integer exponents (4, 6, 8, ...), so the pass thresholds carry a
// 0.25 guard band against fit noise without risking a wrong verdict.
struct ConvergenceVerdict {
    bool converges_quantum;
    bool converges_thermal;
    double tail_exponent_estimate;
};

ConvergenceVerdict convergence_check(const RadialWeighting& w);

// I_Q = integral_0^inf zeta^3 F(zeta)^2 dzeta. Throws NonConvergentIntegral
// when the tail probe says the integral does not exist.
double quantum_shape_integral(const RadialWeighting& w,
                              const ZeropointOptions& opts = {});

// I_T = integral_0^inf zeta^2 F(zeta)^2 dzeta.
double thermal_shape_integral(const RadialWeighting& w,
                              const ZeropointOptions& opts = {});

// Variance of the weighted field average in the vacuum state plus a
// Rayleigh-Jeans thermal occupation at temperature t_b_K:
//   quantum = mu0 hbar c/(6 pi^2 r_S^4) I_Q
//   thermal = mu0 k_B T_B/(3 pi^2 r_S^3) I_T
struct FieldVariance {
    Quantity quantum;  // T^2
    Quantity thermal;  // T^2
    double t_b_K;
};

FieldVariance field_variance(const RadialWeighting& w, double t_b_K,
                             const ZeropointOptions& opts = {});

// Energy resolution of repeated variance-limited measurements, read out
// every back-action wait time T_m = 2 r_S/c over V_S = 4 pi r_S^3/3:
//   E_R = <B^2> V_S T_m/(2 mu0).
// The quantum part is independent of r_S (it reduces to (2/(9 pi)) I_Q
// hbar); the thermal part is linear in r_S.
struct ZeropointEnergy {
    Quantity quantum;  // J s
    Quantity thermal;  // J s

    Quantity total() const { return quantum + thermal; }
};

ZeropointEnergy er_zeropoint_split(const RadialWeighting& w, double t_b_K,
                                   const ZeropointOptions& opts = {});

Quantity er_zeropoint(const RadialWeighting& w, double t_b_K,
                      const ZeropointOptions& opts = {});

}  // namespace erlmag
