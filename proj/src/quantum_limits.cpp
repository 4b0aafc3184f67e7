#include "erlmag/quantum_limits.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "erlmag/constants.hpp"
#include "erlmag/erl_metrics.hpp"
#include "erlmag/errors.hpp"

namespace erlmag {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}

void require_dim(const Quantity& q, const Dimension& want, const char* what) {
    if (q.dim() != want)
        throw DimensionError(std::string(what) + ": expected " + want.str() +
                             ", got " + q.dim().str());
}

void validate_species(const SpeciesParams& p) {
    require_positive(p.gamma_per_T_s, "gamma");
    require_positive(p.v_bar_m_s, "v_bar");
    require_positive(p.sigma_SD_m2, "sigma_SD");
}

}  // namespace

SpeciesParams load_species_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("species file: ") + e.what());
    }
    SpeciesParams p;
    try {
        p.label = j.at("label").get<std::string>();
        p.gamma_per_T_s = j.at("gamma_per_T_s").get<double>();
        p.v_bar_m_s = j.at("v_bar_m_s").get<double>();
        p.sigma_SD_m2 = j.at("sigma_SD_m2").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("species file: ") + e.what());
    }
    validate_species(p);
    return p;
}

double SpnMsiConfig::C() const {
    require_positive(gamma_per_T_s, "gamma");
    return 2.0 / gamma_per_T_s;
}

double SpnMsiConfig::D() const {
    require_positive(gamma_per_T_s, "gamma");
    return 2.0 * constants::hbar * gamma_per_T_s * constants::mu0 / 3.0;
}

Quantity tc_limit() { return joule_seconds(constants::hbar); }

Quantity nvd_limit(double alpha) {
    require_positive(alpha, "alpha");
    return joule_seconds(alpha * constants::hbar);
}

Quantity opm_serf_sb_floor(const SpeciesParams& p, const Quantity& volume) {
    validate_species(p);
    require_dim(volume, dim::volume, "opm_serf_sb_floor volume");
    require_positive(volume.magnitude(), "volume");
    const double g2 = p.gamma_per_T_s * p.gamma_per_T_s;
    return field_psd(p.v_bar_m_s * p.sigma_SD_m2 / (g2 * volume.magnitude()));
}

Quantity opm_serf_limit(const SpeciesParams& p) {
    validate_species(p);
    // Evaluate through the volumetric energy form at unit volume so the
    // volume-independence identity holds exactly rather than to rounding.
    return er_volumetric(opm_serf_sb_floor(p, cubic_metres(1.0)),
                         cubic_metres(1.0));
}

Quantity spn_msi_er(const Quantity& x, const SpnMsiConfig& cfg) {
    require_dim(x, dim::second_per_volume, "spn_msi_er x");
    require_positive(x.magnitude(), "x");
    return joule_seconds(formulas::spn_msi_er(x.magnitude(), cfg.C(), cfg.D(),
                                              constants::mu0));
}

SpnMsiBound spn_msi_bound(const SpnMsiConfig& cfg) {
    const double C = cfg.C();
    const double D = cfg.D();
    return {joule_seconds(C * D / constants::mu0),
            Quantity(C / D, dim::second_per_volume)};
}

Quantity self_dipole_field_noise(double djy, double gamma_per_T_s,
                                 const Quantity& volume) {
    if (!(djy >= 0.0) || !std::isfinite(djy))
        throw DomainError("dJy must be >= 0 and finite");
    require_positive(gamma_per_T_s, "gamma");
    require_dim(volume, dim::volume, "self_dipole_field_noise volume");
    require_positive(volume.magnitude(), "volume");
    return teslas(2.0 * constants::hbar * gamma_per_T_s * constants::mu0 * djy /
                  (3.0 * volume.magnitude()));
}

Quantity ml_min_field(const Quantity& volume, const Quantity& duration) {
    require_dim(volume, dim::volume, "ml_min_field volume");
    require_dim(duration, dim::second, "ml_min_field duration");
    require_positive(volume.magnitude(), "volume");
    require_positive(duration.magnitude(), "duration");
    return teslas(std::sqrt(std::numbers::pi * constants::hbar * constants::mu0 /
                            (volume.magnitude() * duration.magnitude())));
}

Quantity ml_perturbative_min(const Quantity& b0, const Quantity& volume,
                             const Quantity& duration) {
    require_dim(b0, dim::tesla, "ml_perturbative_min bias field");
    require_dim(volume, dim::volume, "ml_perturbative_min volume");
    require_dim(duration, dim::second, "ml_perturbative_min duration");
    require_positive(b0.magnitude(), "bias field");
    require_positive(volume.magnitude(), "volume");
    require_positive(duration.magnitude(), "duration");
    return teslas(std::numbers::pi * constants::hbar * constants::mu0 /
                  (2.0 * b0.magnitude() * volume.magnitude() * duration.magnitude()));
}

Quantity bb_min_field(const Quantity& radius) {
    require_dim(radius, dim::metre, "bb_min_field radius");
    require_positive(radius.magnitude(), "radius");
    const double r = radius.magnitude();
    const double volume = 4.0 * std::numbers::pi * (r * r * r) / 3.0;
    const double t_m = r / constants::c;
    return teslas(std::sqrt(2.0 * constants::mu0 * constants::hbar /
                            (2.0 * std::numbers::pi * volume * t_m)));
}

double bb_resolvable_increment(double beta, double prefactor) {
    if (!(beta >= 1.0) || !std::isfinite(beta))
        throw DomainError("beta must be >= 1; the increment formula assumes a "
                          "field at least as strong as the minimum");
    require_positive(prefactor, "prefactor");
    return prefactor * beta * std::exp(-beta * beta);
}

std::vector<BoundResult> limit_table() {
    const double pi = std::numbers::pi;
    std::vector<BoundResult> t;
    t.push_back({tc_limit(), "tc",
                 "dc squid with resistively shunted junctions at optimal bias"});
    t.push_back({nvd_limit(), "nvd",
                 "nanoscale sensor whose readout back-action depolarizes the source"});
    t.push_back({joule_seconds(4.0 * constants::hbar / 3.0), "spn_msi",
                 "spin ensemble read at x = 3/(hbar gamma^2 mu0), projection noise "
                 "balancing self-field noise"});
    t.push_back({joule_seconds(pi * constants::hbar / 2.0), "ml",
                 "field energy in V just sufficient to reach an orthogonal state "
                 "within the measurement time"});
    t.push_back({joule_seconds(constants::hbar / (2.0 * pi)), "bb",
                 "one bit conveyed across the sensing sphere in a light-crossing "
                 "time"});
    t.push_back({joule_seconds(175.0 / (42.0 * pi) * constants::hbar),
                 "zeropoint_parabolic",
                 "vacuum fluctuations of the parabolically weighted field average, "
                 "read out every 2 r_S/c"});
    return t;
}

}  // namespace erlmag
