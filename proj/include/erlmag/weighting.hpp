#pragma once

#include <memory>
#include <vector>

#include "erlmag/quantity.hpp"

namespace erlmag {

// Radial measurement weighting rho(r) on a sphere of radius r_S, normalized
// so that the integral of 4 pi r^2 rho over [0, r_S] is 1. Closed-form
// shapes are exactly normalized by construction; sampled profiles carry
// their numerically checked normalization and are rejected by the transform
// if it is off by more than 1e-9.
//
// The parabolic shape is rho(r) = (5/(2 V_S)) (1 - r^2/r_S^2) with
// V_S = 4 pi r_S^3/3; the top hat is rho = 1/V_S inside the sphere.
class RadialWeighting {
  public:
    enum class Shape { parabolic, tophat, sampled };

    static RadialWeighting parabolic(double r_s_m);
    static RadialWeighting tophat(double r_s_m);

    // radii must start at 0, increase strictly, and end at r_s_m; densities
    // must be nonnegative and finite. The profile is interpolated with a
    // monotone cubic (Fritsch-Carlson) so it cannot overshoot into negative
    // density between samples.
    static RadialWeighting from_samples(double r_s_m, std::vector<double> radii_m,
                                        std::vector<double> densities_per_m3);

    Shape shape() const { return shape_; }
    double r_s() const { return r_s_m_; }

    // Normalized spherical Fourier transform F(zeta) with zeta = k r_S:
    // F(zeta) = integral of 4 pi r^2 rho(r) sinc(k r) dr. F(0) = 1 and
    // |F| <= 1 for any admissible weighting. zeta must be >= 0.
    double ft(double zeta) const;

    // Integral of 4 pi r^2 rho(r) dr; exactly 1 for the closed forms.
    double normalization() const;

    // Copy with densities rescaled so normalization() == 1 (up to rounding).
    // Identity for the closed forms.
    RadialWeighting normalized() const;

    const std::vector<double>& radii() const { return radii_m_; }
    const std::vector<double>& densities() const { return densities_per_m3_; }

  private:
    struct SampledTransform;

    RadialWeighting(Shape s, double r_s);

    Shape shape_;
    double r_s_m_;
    std::vector<double> radii_m_;
    std::vector<double> densities_per_m3_;
    std::shared_ptr<const SampledTransform> sampled_;
};

// Free-function spelling of RadialWeighting::ft.
double weighting_ft(const RadialWeighting& w, double zeta);

// Free-function spelling of RadialWeighting::normalized.
RadialWeighting sampled_normalized(const RadialWeighting& w);

namespace detail {

// Closed-form transforms, exposed for tests. Both switch to a Taylor series
// below zeta = 0.5 where the closed form loses digits to cancellation.
double parabolic_ft(double zeta);
double tophat_ft(double zeta);

// Monotone cubic (Fritsch-Carlson) slopes for knots (x, y).
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y);

}  // namespace detail

}  // namespace erlmag
