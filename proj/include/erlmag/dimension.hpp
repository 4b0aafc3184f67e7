#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "erlmag/errors.hpp"

namespace erlmag {

// Exponent vector over the 7 SI base dimensions (m, kg, s, A, K, mol, cd).
// Exponents are stored doubled, i.e. in half-integer units, so quantities
// like T/sqrt(Hz) (s^{1/2} factor) and A^{3/2} stay exact. Finer fractions
// are not representable and root() rejects them.
class Dimension {
  public:
    constexpr Dimension() : half_{} {}

    // Exponents given in whole units.
    static constexpr Dimension from_exponents(int m, int kg, int s, int A,
                                              int K = 0, int mol = 0, int cd = 0) {
        Dimension d;
        d.half_ = {static_cast<std::int8_t>(2 * m), static_cast<std::int8_t>(2 * kg),
                   static_cast<std::int8_t>(2 * s), static_cast<std::int8_t>(2 * A),
                   static_cast<std::int8_t>(2 * K), static_cast<std::int8_t>(2 * mol),
                   static_cast<std::int8_t>(2 * cd)};
        return d;
    }

    constexpr bool operator==(const Dimension& o) const { return half_ == o.half_; }
    constexpr bool operator!=(const Dimension& o) const { return !(*this == o); }

    constexpr bool dimensionless() const {
        for (auto h : half_)
            if (h != 0) return false;
        return true;
    }

    constexpr Dimension operator*(const Dimension& o) const {
        Dimension r;
        for (std::size_t i = 0; i < half_.size(); ++i)
            r.half_[i] = static_cast<std::int8_t>(half_[i] + o.half_[i]);
        return r;
    }

    constexpr Dimension operator/(const Dimension& o) const {
        Dimension r;
        for (std::size_t i = 0; i < half_.size(); ++i)
            r.half_[i] = static_cast<std::int8_t>(half_[i] - o.half_[i]);
        return r;
    }

    constexpr Dimension pow(int n) const {
        Dimension r;
        for (std::size_t i = 0; i < half_.size(); ++i)
            r.half_[i] = static_cast<std::int8_t>(half_[i] * n);
        return r;
    }

    // n-th root; every half-exponent must divide evenly.
    constexpr Dimension root(int n) const {
        if (n <= 0) throw DomainError("dimension root: order must be positive");
        Dimension r;
        for (std::size_t i = 0; i < half_.size(); ++i) {
            if (half_[i] % n != 0)
                throw DimensionError("dimension root: exponent " + str() +
                                     " not divisible by " + std::to_string(n));
            r.half_[i] = static_cast<std::int8_t>(half_[i] / n);
        }
        return r;
    }

    std::string str() const {
        static constexpr const char* names[7] = {"m", "kg", "s", "A", "K", "mol", "cd"};
        std::string out;
        for (std::size_t i = 0; i < half_.size(); ++i) {
            if (half_[i] == 0) continue;
            if (!out.empty()) out += ' ';
            out += names[i];
            if (half_[i] != 2) {
                out += '^';
                if (half_[i] % 2 == 0) {
                    out += std::to_string(half_[i] / 2);
                } else {
                    out += std::to_string(half_[i]);
                    out += "/2";
                }
            }
        }
        return out.empty() ? std::string("1") : out;
    }

    constexpr const std::array<std::int8_t, 7>& half_exponents() const { return half_; }

  private:
    std::array<std::int8_t, 7> half_;
};

// Dimensions of the units this library actually uses.
namespace dim {

inline constexpr Dimension dimensionless = Dimension::from_exponents(0, 0, 0, 0);
inline constexpr Dimension metre = Dimension::from_exponents(1, 0, 0, 0);
inline constexpr Dimension kilogram = Dimension::from_exponents(0, 1, 0, 0);
inline constexpr Dimension second = Dimension::from_exponents(0, 0, 1, 0);
inline constexpr Dimension ampere = Dimension::from_exponents(0, 0, 0, 1);
inline constexpr Dimension kelvin = Dimension::from_exponents(0, 0, 0, 0, 1);

inline constexpr Dimension area = metre.pow(2);
inline constexpr Dimension volume = metre.pow(3);
inline constexpr Dimension hertz = Dimension::from_exponents(0, 0, -1, 0);
inline constexpr Dimension metre_per_second = metre / second;
inline constexpr Dimension joule = Dimension::from_exponents(2, 1, -2, 0);
inline constexpr Dimension action = joule * second;
inline constexpr Dimension tesla = Dimension::from_exponents(0, 1, -2, -1);
inline constexpr Dimension weber = tesla * area;
inline constexpr Dimension henry = Dimension::from_exponents(2, 1, -2, -2);
inline constexpr Dimension joule_per_tesla = joule / tesla;

// Spectral densities at dc: PSD units carry 1/Hz = s.
inline constexpr Dimension field_psd = tesla.pow(2) * second;
inline constexpr Dimension flux_psd = weber.pow(2) * second;
inline constexpr Dimension moment_psd = joule_per_tesla.pow(2) * second;
inline constexpr Dimension field_variance = tesla.pow(2);

// delta-B sqrt(T): field rms times root duration.
inline constexpr Dimension field_rms_root_time = field_psd.root(2);

// Gyromagnetic ratio 1/(T s) and the spin-noise parameter x = T<dJy^2>/V.
inline constexpr Dimension gyromagnetic = (tesla * second).pow(-1);
inline constexpr Dimension second_per_volume = second / volume;

}  // namespace dim

}  // namespace erlmag
