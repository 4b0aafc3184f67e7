#pragma once

#include <cmath>
#include <string>

#include "erlmag/constants.hpp"
#include "erlmag/dimension.hpp"
#include "erlmag/errors.hpp"

namespace erlmag {

// A finite real magnitude in SI base units plus its dimension. Arithmetic
// enforces dimension algebra; NaN and infinity are rejected at construction
// so they cannot propagate into downstream math.
class Quantity {
  public:
    Quantity(double magnitude, Dimension dim) : mag_(magnitude), dim_(dim) {
        if (!std::isfinite(magnitude))
            throw DomainError("quantity: magnitude must be finite");
    }

    double magnitude() const { return mag_; }
    const Dimension& dim() const { return dim_; }

    Quantity operator*(const Quantity& o) const {
        return Quantity(mag_ * o.mag_, dim_ * o.dim_);
    }
    Quantity operator/(const Quantity& o) const {
        if (o.mag_ == 0.0) throw DomainError("quantity: division by zero");
        return Quantity(mag_ / o.mag_, dim_ / o.dim_);
    }
    Quantity operator+(const Quantity& o) const {
        require_same_dim(o, "+");
        return Quantity(mag_ + o.mag_, dim_);
    }
    Quantity operator-(const Quantity& o) const {
        require_same_dim(o, "-");
        return Quantity(mag_ - o.mag_, dim_);
    }

    Quantity pow(int n) const { return Quantity(std::pow(mag_, n), dim_.pow(n)); }

    // Magnitude roots use sqrt/cbrt directly so that l = root(A, 2) and
    // l = root(V, 3) reproduce sqrt/cbrt bit for bit.
    Quantity root(int n) const {
        if (mag_ < 0.0) throw DomainError("quantity: root of negative magnitude");
        double m = 0.0;
        switch (n) {
            case 1: m = mag_; break;
            case 2: m = std::sqrt(mag_); break;
            case 3: m = std::cbrt(mag_); break;
            default:
                if (n <= 0) throw DomainError("quantity root: order must be positive");
                m = std::pow(mag_, 1.0 / n);
        }
        return Quantity(m, dim_.root(n));
    }

    bool same_dimension(const Quantity& o) const { return dim_ == o.dim_; }

  private:
    void require_same_dim(const Quantity& o, const char* op) const {
        if (dim_ != o.dim_)
            throw DimensionError(std::string("quantity ") + op + ": dimensions differ (" +
                                 dim_.str() + " vs " + o.dim_.str() + ")");
    }

    double mag_;
    Dimension dim_;
};

inline Quantity operator*(double s, const Quantity& q) {
    return Quantity(s * q.magnitude(), q.dim());
}
inline Quantity operator*(const Quantity& q, double s) { return s * q; }
inline Quantity operator/(const Quantity& q, double s) {
    if (s == 0.0) throw DomainError("quantity: division by zero");
    return Quantity(q.magnitude() / s, q.dim());
}

// E in units of the reduced Planck constant; E must carry action dimension.
inline double in_hbar(const Quantity& e) {
    if (e.dim() != dim::action)
        throw DimensionError("in_hbar: expected action (J s), got " + e.dim().str());
    return e.magnitude() / constants::hbar;
}

// Construction helpers for the units this library traffics in.
inline Quantity metres(double v) { return Quantity(v, dim::metre); }
inline Quantity square_metres(double v) { return Quantity(v, dim::area); }
inline Quantity cubic_metres(double v) { return Quantity(v, dim::volume); }
inline Quantity seconds(double v) { return Quantity(v, dim::second); }
inline Quantity kelvins(double v) { return Quantity(v, dim::kelvin); }
inline Quantity teslas(double v) { return Quantity(v, dim::tesla); }
inline Quantity henries(double v) { return Quantity(v, dim::henry); }
inline Quantity joule_seconds(double v) { return Quantity(v, dim::action); }
inline Quantity field_psd(double v) { return Quantity(v, dim::field_psd); }
inline Quantity flux_psd(double v) { return Quantity(v, dim::flux_psd); }
inline Quantity moment_psd(double v) { return Quantity(v, dim::moment_psd); }

}  // namespace erlmag
