#pragma once

#include <string>

namespace erlmag {

// CODATA 2018 values, SI base units. Fixed so every documented number in
// this project is reproducible bit for bit.
namespace constants {

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double mu0 = 1.25663706212e-6;   // T m / A
inline constexpr double c = 299792458.0;          // m / s
inline constexpr double k_B = 1.380649e-23;       // J / K
inline constexpr double mu_B = 9.2740100783e-24;  // J / T
inline constexpr double Phi0 = 2.067833848e-15;   // Wb

}  // namespace constants

// Value-type snapshot of the constants, serializable for consumers that
// want the table as data. Immutable after construction.
class ConstantsTable {
  public:
    static ConstantsTable codata2018() {
        return ConstantsTable(constants::hbar, constants::mu0, constants::c,
                              constants::k_B, constants::mu_B, constants::Phi0);
    }

    ConstantsTable(double hbar, double mu0, double c, double k_B, double mu_B,
                   double Phi0)
        : hbar_(hbar), mu0_(mu0), c_(c), k_B_(k_B), mu_B_(mu_B), Phi0_(Phi0) {}

    double hbar() const { return hbar_; }
    double mu0() const { return mu0_; }
    double c() const { return c_; }
    double k_B() const { return k_B_; }
    double mu_B() const { return mu_B_; }
    double Phi0() const { return Phi0_; }

    bool operator==(const ConstantsTable& o) const {
        return hbar_ == o.hbar_ && mu0_ == o.mu0_ && c_ == o.c_ &&
               k_B_ == o.k_B_ && mu_B_ == o.mu_B_ && Phi0_ == o.Phi0_;
    }

    // JSON text with full round-trip fidelity.
    std::string to_json() const;
    static ConstantsTable from_json(const std::string& text);

  private:
    double hbar_;
    double mu0_;
    double c_;
    double k_B_;
    double mu_B_;
    double Phi0_;
};

}  // namespace erlmag
