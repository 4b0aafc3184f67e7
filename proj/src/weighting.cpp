#include "erlmag/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "erlmag/errors.hpp"

namespace erlmag {

namespace {

constexpr double kSeriesSwitch = 0.5;

// Gauss-Legendre 12-point nodes/weights on [-1, 1]; exact through degree 23,
// enough for cubic-profile moments up to u^{2k+2} with k = 8.
constexpr double kGlx[6] = {0.125233408511468915472441369464,
                            0.367831498998180193752691536644,
                            0.587317954286617447296702418941,
                            0.769902674194304687036893833213,
                            0.904117256370474856678465866119,
                            0.981560634246719250690549090149};
constexpr double kGlw[6] = {0.249147045813402785000562436043,
                            0.233492536538354808760849898925,
                            0.203167426723065921749064455810,
                            0.160078328543346226334652529543,
                            0.106939325995318430960254718194,
                            0.047175336386511827194615961485};

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

namespace detail {

double parabolic_ft(double zeta) {
    if (zeta < kSeriesSwitch) {
        // 15 sum_k (-zeta^2/2)^k / (k! (2k+5)!!), term ratio -z^2/(2k(2k+5)).
        double term = 1.0;
        double sum = 1.0;
        const double z2 = zeta * zeta;
        for (int k = 1; k < 40; ++k) {
            term *= -z2 / (2.0 * k * (2.0 * k + 5.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const double z2 = zeta * zeta;
    const double z5 = z2 * z2 * zeta;
    return 15.0 * ((3.0 - z2) * std::sin(zeta) - 3.0 * zeta * std::cos(zeta)) / z5;
}

double tophat_ft(double zeta) {
    if (zeta < kSeriesSwitch) {
        double term = 1.0;
        double sum = 1.0;
        const double z2 = zeta * zeta;
        for (int k = 1; k < 40; ++k) {
            term *= -z2 / (2.0 * k * (2.0 * k + 3.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const double z3 = zeta * zeta * zeta;
    return 3.0 * (std::sin(zeta) - zeta * std::cos(zeta)) / z3;
}

std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), delta(n - 1), d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

}  // namespace detail

// Preprocessed dimensionless profile w(u) = 4 pi r_S^3 rho(u r_S) on knots
// u in [0, 1], stored as per-interval cubics in the local coordinate
// t = u - u_i, plus the even moments used by the small-zeta series.
struct RadialWeighting::SampledTransform {
    std::vector<double> u;
    std::vector<double> c0, c1, c2, c3;  // cubic coefficients per interval
    std::vector<double> moments;         // M_k = integral u^{2k+2} w(u) du
    double norm = 0.0;                   // M_0

    double profile(std::size_t i, double t) const {
        return c0[i] + t * (c1[i] + t * (c2[i] + t * c3[i]));
    }

    // integral over interval i of t-polynomial weighted by g(u), Gauss-
    // Legendre 12 point; exact for the polynomial integrands used here.
    template <class G>
    double gl_interval(std::size_t i, G&& g) const {
        const double a = u[i];
        const double b = u[i + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (int q = 0; q < 6; ++q) {
            const double up = mid + half * kGlx[q];
            const double um = mid - half * kGlx[q];
            acc += kGlw[q] * (g(up, up - a) + g(um, um - a));
        }
        return acc * half;
    }

    double moment(int k) const { return moments[static_cast<std::size_t>(k)]; }

    // F(zeta) for zeta >= kSeriesSwitch: per-interval integration of
    // (1/zeta) u w(u) sin(zeta u). Intervals with at least one radian of
    // phase use the exact antiderivative of the quartic P(t) = u w(u);
    // shorter ones use Gauss-Legendre, which the slow phase keeps exact to
    // rounding. The choice depends only on (zeta, interval), so results are
    // reproducible.
    double ft_oscillatory(double zeta) const {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            const double h = u[i + 1] - u[i];
            // P(t) = (u_i + t) w_i(t), quartic in t.
            const double p0 = u[i] * c0[i];
            const double p1 = c0[i] + u[i] * c1[i];
            const double p2 = c1[i] + u[i] * c2[i];
            const double p3 = c2[i] + u[i] * c3[i];
            const double p4 = c3[i];
            if (zeta * h >= 1.0) {
                auto anti = [&](double t) {
                    const double phase = zeta * (u[i] + t);
                    const double s = std::sin(phase);
                    const double co = std::cos(phase);
                    const double P = p0 + t * (p1 + t * (p2 + t * (p3 + t * p4)));
                    const double P1 = p1 + t * (2.0 * p2 + t * (3.0 * p3 + t * 4.0 * p4));
                    const double P2 = 2.0 * p2 + t * (6.0 * p3 + t * 12.0 * p4);
                    const double P3 = 6.0 * p3 + t * 24.0 * p4;
                    const double P4 = 24.0 * p4;
                    const double iz = 1.0 / zeta;
                    return iz * (-P * co +
                                 iz * (P1 * s +
                                       iz * (P2 * co + iz * (-P3 * s - iz * P4 * co))));
                };
                acc += anti(h) - anti(0.0);
            } else {
                acc += gl_interval(i, [&](double up, double t) {
                    const double P = p0 + t * (p1 + t * (p2 + t * (p3 + t * p4)));
                    return P * std::sin(zeta * up);
                });
            }
        }
        return acc / zeta;
    }

    // Small-zeta series from the even moments:
    // F(zeta) = sum_k (-1)^k zeta^{2k} M_k / (2k+1)!.
    double ft_series(double zeta) const {
        const double z2 = zeta * zeta;
        double pow = 1.0;
        double factorial = 1.0;  // (2k+1)!
        double sum = 0.0;
        for (std::size_t k = 0; k < moments.size(); ++k) {
            if (k > 0) {
                pow *= -z2;
                factorial *= (2.0 * k) * (2.0 * k + 1.0);
            }
            sum += pow * moments[k] / factorial;
        }
        return sum;
    }
};

RadialWeighting::RadialWeighting(Shape s, double r_s) : shape_(s), r_s_m_(r_s) {
    require_positive(r_s, "weighting radius");
}

RadialWeighting RadialWeighting::parabolic(double r_s_m) {
    return RadialWeighting(Shape::parabolic, r_s_m);
}

RadialWeighting RadialWeighting::tophat(double r_s_m) {
    return RadialWeighting(Shape::tophat, r_s_m);
}

RadialWeighting RadialWeighting::from_samples(double r_s_m,
                                              std::vector<double> radii_m,
                                              std::vector<double> densities_per_m3) {
    RadialWeighting w(Shape::sampled, r_s_m);
    if (radii_m.size() != densities_per_m3.size())
        throw DomainError("sampled weighting: radii and densities differ in length");
    if (radii_m.size() < 3)
        throw DomainError("sampled weighting: need at least 3 samples");
    if (radii_m.front() != 0.0)
        throw DomainError("sampled weighting: first radius must be 0");
    if (std::abs(radii_m.back() - r_s_m) > 1e-12 * r_s_m)
        throw DomainError("sampled weighting: last radius must equal r_s");
    for (std::size_t i = 0; i + 1 < radii_m.size(); ++i)
        if (!(radii_m[i] < radii_m[i + 1]))
            throw DomainError("sampled weighting: radii must increase strictly");
    for (double rho : densities_per_m3)
        if (!(rho >= 0.0) || !std::isfinite(rho))
            throw DomainError("sampled weighting: densities must be >= 0 and finite");

    auto st = std::make_shared<SampledTransform>();
    const std::size_t n = radii_m.size();
    st->u.resize(n);
    for (std::size_t i = 0; i < n; ++i) st->u[i] = radii_m[i] / r_s_m;
    st->u.back() = 1.0;
    // w(u) = 4 pi r_S^3 rho, making integral u^2 w du the normalization.
    std::vector<double> wk(n);
    const double scale = 4.0 * std::numbers::pi * r_s_m * r_s_m * r_s_m;
    for (std::size_t i = 0; i < n; ++i) wk[i] = scale * densities_per_m3[i];

    const std::vector<double> d = detail::pchip_slopes(st->u, wk);
    st->c0.resize(n - 1);
    st->c1.resize(n - 1);
    st->c2.resize(n - 1);
    st->c3.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = st->u[i + 1] - st->u[i];
        const double slope = (wk[i + 1] - wk[i]) / h;
        st->c0[i] = wk[i];
        st->c1[i] = d[i];
        st->c2[i] = (3.0 * slope - 2.0 * d[i] - d[i + 1]) / h;
        st->c3[i] = (d[i] + d[i + 1] - 2.0 * slope) / (h * h);
    }

    st->moments.resize(9);
    for (int k = 0; k < 9; ++k) {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            m += st->gl_interval(i, [&](double up, double t) {
                return std::pow(up, 2 * k + 2) * st->profile(i, t);
            });
        }
        st->moments[static_cast<std::size_t>(k)] = m;
    }
    st->norm = st->moments[0];

    w.radii_m_ = std::move(radii_m);
    w.densities_per_m3_ = std::move(densities_per_m3);
    w.sampled_ = std::move(st);
    return w;
}

double RadialWeighting::normalization() const {
    return shape_ == Shape::sampled ? sampled_->norm : 1.0;
}

RadialWeighting RadialWeighting::normalized() const {
    if (shape_ != Shape::sampled) return *this;
    const double n = sampled_->norm;
    if (!(n > 0.0))
        throw DomainError("sampled weighting: cannot normalize a zero profile");
    std::vector<double> rho = densities_per_m3_;
    for (double& v : rho) v /= n;
    return from_samples(r_s_m_, radii_m_, std::move(rho));
}

double RadialWeighting::ft(double zeta) const {
    if (!(zeta >= 0.0) || !std::isfinite(zeta))
        throw DomainError("weighting transform: zeta must be >= 0 and finite");
    switch (shape_) {
        case Shape::parabolic:
            return detail::parabolic_ft(zeta);
        case Shape::tophat:
            return detail::tophat_ft(zeta);
        case Shape::sampled:
            break;
    }
    if (std::abs(sampled_->norm - 1.0) > 1e-9)
        throw DomainError(
            "sampled weighting is not normalized: integral of 4 pi r^2 rho is " +
            std::to_string(sampled_->norm) + "; rescale with sampled_normalized");
    return zeta < kSeriesSwitch ? sampled_->ft_series(zeta)
                                : sampled_->ft_oscillatory(zeta);
}

double weighting_ft(const RadialWeighting& w, double zeta) { return w.ft(zeta); }

RadialWeighting sampled_normalized(const RadialWeighting& w) {
    return w.normalized();
}

}  // namespace erlmag
