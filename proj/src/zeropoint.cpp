#include "erlmag/zeropoint.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "erlmag/constants.hpp"
#include "erlmag/errors.hpp"
#include "erlmag/quadrature.hpp"

namespace erlmag {

namespace {

constexpr double kPi = std::numbers::pi;

// Thresholds on the squared-transform decay exponent, with the guard band
// described at ConvergenceVerdict.
constexpr double kQuantumExponent = 4.0;
constexpr double kThermalExponent = 3.0;
constexpr double kGuardBand = 0.25;

// Envelope maximum of F^2 near zc: sample one full oscillation at pi/6
// steps and refine the discrete peak with a three-point parabola.
struct EnvelopePoint {
    double zeta;
    double value;
};

EnvelopePoint envelope_max(const RadialWeighting& w, double zc) {
    constexpr int kSamples = 13;
    constexpr double kStep = kPi / 6.0;
    double y[kSamples];
    int jmax = 0;
    for (int j = 0; j < kSamples; ++j) {
        const double f = w.ft(zc + j * kStep);
        y[j] = f * f;
        if (y[j] > y[jmax]) jmax = j;
    }
    if (jmax == 0 || jmax == kSamples - 1)
        return {zc + jmax * kStep, y[jmax]};
    const double den = y[jmax - 1] - 2.0 * y[jmax] + y[jmax + 1];
    if (!(den < 0.0)) return {zc + jmax * kStep, y[jmax]};
    const double shift = 0.5 * (y[jmax - 1] - y[jmax + 1]) / den;
    const double peak =
        y[jmax] - (y[jmax - 1] - y[jmax + 1]) * (y[jmax - 1] - y[jmax + 1]) /
                      (8.0 * den);
    return {zc + (jmax + shift) * kStep, peak};
}

double shape_integral(const RadialWeighting& w, int power,
                      const ZeropointOptions& opts) {
    const ConvergenceVerdict verdict = convergence_check(w);
    const bool ok =
        power == 3 ? verdict.converges_quantum : verdict.converges_thermal;
    if (!ok) {
        const double need = power == 3 ? kQuantumExponent : kThermalExponent;
        throw NonConvergentIntegral(
            std::string(power == 3 ? "quantum" : "thermal") +
                " shape integral does not converge: squared-transform tail "
                "exponent estimate " +
                std::to_string(verdict.tail_exponent_estimate) + " is not above " +
                std::to_string(need),
            verdict.tail_exponent_estimate);
    }

    auto integrand = [&w, power](double z) {
        const double f = w.ft(z);
        double zp = z * z;
        if (power == 3) zp *= z;
        return zp * f * f;
    };
    auto oscillator = [&w](double z) { return w.ft(z); };

    // Integrate the head through the first transform zero past zeta = 10,
    // then accelerate the one-arch segment sums of the tail.
    const auto first_zero = next_sign_change(oscillator, 10.0, kPi / 4.0,
                                             10.0 + 64.0 * kPi);
    const double head_end = first_zero.value_or(30.0);
    const double head = integrate_adaptive(integrand, 0.0, head_end, 1e-11, 0.0);

    OscillatoryTailOptions tail_opts;
    tail_opts.rel_tol = opts.rel_tol;
    tail_opts.scale_hint = std::abs(head);
    tail_opts.threads = opts.threads;
    const auto tail = integrate_oscillatory_tail(integrand, oscillator, head_end,
                                                 tail_opts);
    return head + tail.value;
}

}  // namespace

ConvergenceVerdict convergence_check(const RadialWeighting& w) {
    // Log-spaced probes across the last decade of the default range.
    constexpr int kProbes = 20;
    constexpr double kLo = 1e3;
    constexpr double kHi = 1e4;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < kProbes; ++i) {
        const double zc = kLo * std::pow(kHi / kLo, i / double(kProbes - 1));
        const EnvelopePoint p = envelope_max(w, zc);
        const double lx = std::log(p.zeta);
        const double ly = std::log(p.value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = kProbes;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double p_est = -slope;
    return {p_est > kQuantumExponent + kGuardBand,
            p_est > kThermalExponent + kGuardBand, p_est};
}

double quantum_shape_integral(const RadialWeighting& w,
                              const ZeropointOptions& opts) {
    return shape_integral(w, 3, opts);
}

double thermal_shape_integral(const RadialWeighting& w,
                              const ZeropointOptions& opts) {
    return shape_integral(w, 2, opts);
}

FieldVariance field_variance(const RadialWeighting& w, double t_b_K,
                             const ZeropointOptions& opts) {
    if (!(t_b_K >= 0.0) || !std::isfinite(t_b_K))
        throw DomainError("bath temperature must be >= 0 and finite");
    const double rs = w.r_s();
    const double rs3 = rs * rs * rs;
    const double iq = quantum_shape_integral(w, opts);
    const double it = thermal_shape_integral(w, opts);
    const double quantum =
        constants::mu0 * constants::hbar * constants::c / (6.0 * kPi * kPi * (rs3 * rs)) * iq;
    const double thermal =
        constants::mu0 * constants::k_B * t_b_K / (3.0 * kPi * kPi * rs3) * it;
    return {Quantity(quantum, dim::field_variance),
            Quantity(thermal, dim::field_variance), t_b_K};
}

ZeropointEnergy er_zeropoint_split(const RadialWeighting& w, double t_b_K,
                                   const ZeropointOptions& opts) {
    const FieldVariance var = field_variance(w, t_b_K, opts);
    const double rs = w.r_s();
    const double v_s = 4.0 * kPi * (rs * rs * rs) / 3.0;
    const double t_m = 2.0 * rs / constants::c;
    const double scale = v_s * t_m / (2.0 * constants::mu0);
    return {joule_seconds(var.quantum.magnitude() * scale),
            joule_seconds(var.thermal.magnitude() * scale)};
}

Quantity er_zeropoint(const RadialWeighting& w, double t_b_K,
                      const ZeropointOptions& opts) {
    return er_zeropoint_split(w, t_b_K, opts).total();
}

}  // namespace erlmag
