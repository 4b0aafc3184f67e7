#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "erlmag/errors.hpp"
#include "erlmag/weighting.hpp"

using namespace erlmag;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = a + (b - a) * i / double(n - 1);
    out.back() = b;
    return out;
}
}  // namespace

TEST_CASE("closed-form transforms: values and limits") {
    CHECK(detail::parabolic_ft(0.0) == 1.0);
    CHECK(detail::tophat_ft(0.0) == 1.0);
    CHECK(detail::parabolic_ft(kPi) ==
          doctest::Approx(45.0 / std::pow(kPi, 4.0)).epsilon(1e-12));
    CHECK(detail::parabolic_ft(kPi) ==
          doctest::Approx(0.461969201461).epsilon(1e-11));
    CHECK(detail::tophat_ft(kPi) ==
          doctest::Approx(3.0 / (kPi * kPi)).epsilon(1e-12));

    // The series branch joins the closed form smoothly at the switch point.
    for (double z : {0.49999, 0.5, 0.50001}) {
        const double direct_p =
            15.0 *
            ((3.0 - z * z) * std::sin(z) - 3.0 * z * std::cos(z)) /
            std::pow(z, 5.0);
        const double direct_t =
            3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
        CHECK(detail::parabolic_ft(z) ==
              doctest::Approx(direct_p).epsilon(1e-12));
        CHECK(detail::tophat_ft(z) == doctest::Approx(direct_t).epsilon(1e-12));
    }

    // |F| <= 1 everywhere.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 200.0);
    for (int i = 0; i < 2000; ++i) {
        const double z = u(rng);
        CHECK(std::abs(detail::parabolic_ft(z)) <= 1.0);
        CHECK(std::abs(detail::tophat_ft(z)) <= 1.0);
    }
}

TEST_CASE("closed-form weightings are exactly normalized") {
    const RadialWeighting p = RadialWeighting::parabolic(1e-3);
    const RadialWeighting t = RadialWeighting::tophat(2.0);
    CHECK(p.normalization() == 1.0);
    CHECK(t.normalization() == 1.0);
    CHECK(p.ft(0.0) == 1.0);
    CHECK(p.ft(kPi) == detail::parabolic_ft(kPi));
    CHECK(t.ft(kPi) == detail::tophat_ft(kPi));
    CHECK_THROWS_AS(p.ft(-1.0), DomainError);
    CHECK_THROWS_AS(RadialWeighting::parabolic(0.0), DomainError);
}

TEST_CASE("sampled profile validation") {
    const double rs = 1e-3;
    CHECK_THROWS_AS(
        RadialWeighting::from_samples(rs, {0.0, rs}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(RadialWeighting::from_samples(
                        rs, {1e-5, 5e-4, rs}, {1.0, 1.0, 1.0}),
                    DomainError);  // must start at 0
    CHECK_THROWS_AS(RadialWeighting::from_samples(
                        rs, {0.0, 5e-4, 4e-4, rs}, {1.0, 1.0, 1.0, 1.0}),
                    DomainError);  // strictly increasing
    CHECK_THROWS_AS(RadialWeighting::from_samples(
                        rs, {0.0, 5e-4, 0.9e-3}, {1.0, 1.0, 1.0}),
                    DomainError);  // must end at r_S
    CHECK_THROWS_AS(RadialWeighting::from_samples(
                        rs, {0.0, 5e-4, rs}, {1.0, -1.0, 1.0}),
                    DomainError);  // nonnegative density
}

TEST_CASE("unnormalized samples are rejected by ft and fixed by normalized") {
    const double rs = 1e-3;
    const auto radii = linspace(0.0, rs, 40);
    std::vector<double> dens(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double u = radii[i] / rs;
        dens[i] = 7.0 * (1.0 - u * u);  // arbitrary scale
    }
    const RadialWeighting raw =
        RadialWeighting::from_samples(rs, radii, dens);
    CHECK(raw.normalization() != doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_WITH_AS(raw.ft(1.0), doctest::Contains("sampled_normalized"),
                         DomainError);

    const RadialWeighting fixed = sampled_normalized(raw);
    CHECK(fixed.normalization() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW(fixed.ft(1.0));
}

TEST_CASE("sampled parabolic profile reproduces the closed-form transform") {
    const double rs = 2.5e-4;
    const auto radii = linspace(0.0, rs, 240);
    std::vector<double> dens(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double u = radii[i] / rs;
        dens[i] = 1.0 - u * u;
    }
    const RadialWeighting w =
        RadialWeighting::from_samples(rs, radii, dens).normalized();

    // Series branch, oscillatory branch, and the seam between them.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double z = u(rng);
        CHECK(w.ft(z) ==
              doctest::Approx(detail::parabolic_ft(z)).epsilon(2e-6));
    }
    for (double z : {0.4999, 0.5001, 1.0 - 1e-13, 1.0 + 1e-13}) {
        CHECK(w.ft(z) ==
              doctest::Approx(detail::parabolic_ft(z)).epsilon(2e-6));
    }
    // weighting_ft is the same function.
    CHECK(weighting_ft(w, 3.7) == w.ft(3.7));
}

TEST_CASE("pchip slopes are monotonicity-preserving") {
    // Flat data segments force zero slopes; no overshoot below zero.
    const std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y = {1.0, 1.0, 0.5, 0.0, 0.0};
    const auto m = detail::pchip_slopes(x, y);
    REQUIRE(m.size() == x.size());
    CHECK(m[0] == 0.0);
    CHECK(m[1] == 0.0);
    CHECK(m[3] <= 0.0);
    CHECK(m[4] == 0.0);
}
