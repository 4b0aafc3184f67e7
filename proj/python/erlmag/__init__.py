"""Energy resolution per bandwidth of magnetic-field sensors.

Thin Python face over the C++ core: E_R forms for the common sensor
geometries, the quantum limit constants and evaluators, the zero-point
quadrature engine, and the sensitivity-survey pipeline.
"""

from ._core import (
    CODATA2018,
    DimensionError,
    DomainError,
    NonConvergentIntegral,
    ParseError,
    bb_min_field,
    bb_resolvable_increment,
    convergence_check,
    er_area,
    er_from_discrete,
    er_general,
    er_squid,
    er_volumetric,
    flux_noise_to_field_noise,
    hbar,
    in_hbar,
    limit_table,
    ml_min_field,
    ml_perturbative_min,
    moment_noise_to_field_noise,
    nvd_limit,
    opm_serf_limit,
    opm_serf_sb_floor,
    self_dipole_field_noise,
    spn_msi_bound,
    spn_msi_er,
    survey_csv,
    survey_evaluate,
    survey_json,
    survey_svg,
    tc_limit,
    zeropoint,
)

__all__ = [
    "CODATA2018",
    "DimensionError",
    "DomainError",
    "NonConvergentIntegral",
    "ParseError",
    "bb_min_field",
    "bb_resolvable_increment",
    "convergence_check",
    "er_area",
    "er_from_discrete",
    "er_general",
    "er_squid",
    "er_volumetric",
    "flux_noise_to_field_noise",
    "hbar",
    "in_hbar",
    "limit_table",
    "ml_min_field",
    "ml_perturbative_min",
    "moment_noise_to_field_noise",
    "nvd_limit",
    "opm_serf_limit",
    "opm_serf_sb_floor",
    "self_dipole_field_noise",
    "spn_msi_bound",
    "spn_msi_er",
    "survey_csv",
    "survey_evaluate",
    "survey_json",
    "survey_svg",
    "tc_limit",
    "zeropoint",
]

__version__ = "0.1.0"
