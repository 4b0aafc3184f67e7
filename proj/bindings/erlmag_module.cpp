// Python face of the library. Inputs and outputs are plain SI doubles and
// JSON-shaped dicts; the dimension checks still run inside, surfacing as
// the erlmag exception types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "erlmag/constants.hpp"
#include "erlmag/erl_metrics.hpp"
#include "erlmag/errors.hpp"
#include "erlmag/quantity.hpp"
#include "erlmag/quantum_limits.hpp"
#include "erlmag/survey.hpp"
#include "erlmag/weighting.hpp"
#include "erlmag/zeropoint.hpp"

namespace py = pybind11;
using namespace erlmag;

namespace {

RadialWeighting make_weighting(const std::string& name, double r_s,
                               const std::optional<std::vector<double>>& radii,
                               const std::optional<std::vector<double>>& densities) {
    if (name == "parabolic") return RadialWeighting::parabolic(r_s);
    if (name == "tophat") return RadialWeighting::tophat(r_s);
    if (name == "sampled") {
        if (!radii || !densities)
            throw DomainError("sampled weighting needs radii and densities");
        return RadialWeighting::from_samples(r_s, *radii, *densities)
            .normalized();
    }
    throw DomainError("unknown weighting '" + name +
                      "' (parabolic, tophat, sampled)");
}

py::dict report_to_dict(const ErReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["technology"] = r.technology;
    d["l_m"] = r.l_m;
    d["dB_sqrtT"] = r.db_sqrt_t;
    d["er_over_hbar"] = r.er_over_hbar;
    d["below_hbar"] = r.below_hbar;
    d["conversions"] = r.conversions_applied;
    return d;
}

std::vector<ErReport> run_survey(const std::string& dataset_text, int threads,
                                 py::list* diagnostics_out) {
    const Dataset ds = load_dataset(dataset_text);
    std::vector<RowDiagnostic> eval_diags;
    const std::vector<ErReport> reports =
        evaluate_dataset(ds, eval_diags, threads);
    if (diagnostics_out) {
        for (const RowDiagnostic& d : ds.diagnostics) {
            py::dict row;
            row["stage"] = "load";
            row["row"] = d.row;
            row["message"] = d.message;
            diagnostics_out->append(row);
        }
        for (const RowDiagnostic& d : eval_diags) {
            py::dict row;
            row["stage"] = "evaluate";
            row["row"] = d.row;
            row["message"] = d.message;
            diagnostics_out->append(row);
        }
    }
    return reports;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "energy resolution per bandwidth of magnetic-field sensors";

    py::register_exception<DimensionError>(m, "DimensionError",
                                           PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NonConvergentIntegral>(m, "NonConvergentIntegral",
                                                  PyExc_ArithmeticError);

    py::dict consts;
    consts["hbar_J_s"] = constants::hbar;
    consts["mu0_N_A2"] = constants::mu0;
    consts["c_m_s"] = constants::c;
    consts["k_B_J_K"] = constants::k_B;
    consts["mu_B_J_T"] = constants::mu_B;
    consts["Phi0_Wb"] = constants::Phi0;
    m.attr("CODATA2018") = consts;
    m.attr("hbar") = constants::hbar;

    // Energy resolution forms; sensitivities in SI PSD units, results in J s.
    m.def(
        "er_general",
        [](double sb, double l) {
            return er_general(field_psd(sb), metres(l)).magnitude();
        },
        py::arg("sb_T2_per_Hz"), py::arg("l_m"),
        "S_B l^3/(2 mu0), the technology-spanning form");
    m.def(
        "er_squid",
        [](double sphi, double inductance) {
            return er_squid(flux_psd(sphi), henries(inductance)).magnitude();
        },
        py::arg("sphi_Wb2_per_Hz"), py::arg("inductance_H"),
        "S_Phi/(2L) for flux sensors");
    m.def(
        "er_area",
        [](double sb, double area, double alpha) {
            return er_area(field_psd(sb), square_metres(area), alpha)
                .magnitude();
        },
        py::arg("sb_T2_per_Hz"), py::arg("area_m2"), py::arg("alpha") = 1.0,
        "S_B A^{3/2}/(2 mu0); compare against alpha*hbar");
    m.def(
        "er_volumetric",
        [](double sb, double volume) {
            return er_volumetric(field_psd(sb), cubic_metres(volume))
                .magnitude();
        },
        py::arg("sb_T2_per_Hz"), py::arg("volume_m3"), "S_B V/(2 mu0)");
    m.def(
        "er_from_discrete",
        [](double db, double duration, double l) {
            return er_from_discrete(teslas(db), seconds(duration), metres(l))
                .magnitude();
        },
        py::arg("db_T"), py::arg("duration_s"), py::arg("l_m"),
        "<dB^2> T l^3/(2 mu0) for a discrete measurement");
    m.def(
        "flux_noise_to_field_noise",
        [](double sphi, double area) {
            return flux_noise_to_field_noise(flux_psd(sphi),
                                             square_metres(area))
                .magnitude();
        },
        py::arg("sphi_Wb2_per_Hz"), py::arg("area_m2"));
    m.def(
        "moment_noise_to_field_noise",
        [](double smu, double distance) {
            return moment_noise_to_field_noise(moment_psd(smu),
                                               metres(distance))
                .magnitude();
        },
        py::arg("smu_J2_per_T2_Hz"), py::arg("distance_m"));

    // Limit constants and evaluators.
    m.def("tc_limit", [] { return tc_limit().magnitude(); });
    m.def(
        "nvd_limit", [](double alpha) { return nvd_limit(alpha).magnitude(); },
        py::arg("alpha") = 0.5);
    m.def(
        "opm_serf_sb_floor",
        [](double gamma, double v_bar, double sigma_sd, double volume) {
            return opm_serf_sb_floor(SpeciesParams{"", gamma, v_bar, sigma_sd},
                                     cubic_metres(volume))
                .magnitude();
        },
        py::arg("gamma_per_T_s"), py::arg("v_bar_m_s"), py::arg("sigma_SD_m2"),
        py::arg("volume_m3"));
    m.def(
        "opm_serf_limit",
        [](double gamma, double v_bar, double sigma_sd) {
            return opm_serf_limit(SpeciesParams{"", gamma, v_bar, sigma_sd})
                .magnitude();
        },
        py::arg("gamma_per_T_s"), py::arg("v_bar_m_s"), py::arg("sigma_SD_m2"));
    m.def(
        "spn_msi_bound",
        [](double gamma) {
            const SpnMsiBound b = spn_msi_bound(SpnMsiConfig{gamma});
            py::dict d;
            d["bound_J_s"] = b.bound.magnitude();
            d["x_opt_s_per_m3"] = b.x_opt.magnitude();
            return d;
        },
        py::arg("gamma_per_T_s"));
    m.def(
        "spn_msi_er",
        [](double x, double gamma) {
            return spn_msi_er(Quantity(x, dim::second_per_volume),
                              SpnMsiConfig{gamma})
                .magnitude();
        },
        py::arg("x_s_per_m3"), py::arg("gamma_per_T_s"));
    m.def(
        "self_dipole_field_noise",
        [](double djy, double gamma, double volume) {
            return self_dipole_field_noise(djy, gamma, cubic_metres(volume))
                .magnitude();
        },
        py::arg("djy"), py::arg("gamma_per_T_s"), py::arg("volume_m3"));
    m.def(
        "ml_min_field",
        [](double volume, double duration) {
            return ml_min_field(cubic_metres(volume), seconds(duration))
                .magnitude();
        },
        py::arg("volume_m3"), py::arg("duration_s"));
    m.def(
        "ml_perturbative_min",
        [](double b0, double volume, double duration) {
            return ml_perturbative_min(teslas(b0), cubic_metres(volume),
                                       seconds(duration))
                .magnitude();
        },
        py::arg("b0_T"), py::arg("volume_m3"), py::arg("duration_s"));
    m.def(
        "bb_min_field",
        [](double radius) { return bb_min_field(metres(radius)).magnitude(); },
        py::arg("radius_m"));
    m.def("bb_resolvable_increment", &bb_resolvable_increment, py::arg("beta"),
          py::arg("prefactor") = 1.0);
    m.def("limit_table", [] {
        py::list rows;
        for (const BoundResult& b : limit_table()) {
            py::dict d;
            d["name"] = b.bound_name;
            d["over_hbar"] = in_hbar(b.value);
            d["saturation_condition"] = b.saturation_condition;
            rows.append(d);
        }
        return rows;
    });

    // Zero-point engine.
    m.def(
        "zeropoint",
        [](const std::string& weighting, double r_s, double t_b,
           double rel_tol, int threads,
           const std::optional<std::vector<double>>& radii,
           const std::optional<std::vector<double>>& densities) {
            const RadialWeighting w =
                make_weighting(weighting, r_s, radii, densities);
            const ZeropointOptions opts{rel_tol, threads};
            const ConvergenceVerdict v = convergence_check(w);
            py::dict d;
            d["weighting"] = weighting;
            d["rs_m"] = r_s;
            d["tb_K"] = t_b;
            d["tail_exponent"] = v.tail_exponent_estimate;
            d["converges_quantum"] = v.converges_quantum;
            d["converges_thermal"] = v.converges_thermal;
            d["i_q"] = quantum_shape_integral(w, opts);
            d["i_t"] = thermal_shape_integral(w, opts);
            const FieldVariance var = field_variance(w, t_b, opts);
            d["variance_quantum_T2"] = var.quantum.magnitude();
            d["variance_thermal_T2"] = var.thermal.magnitude();
            const ZeropointEnergy er = er_zeropoint_split(w, t_b, opts);
            d["er_quantum_J_s"] = er.quantum.magnitude();
            d["er_thermal_J_s"] = er.thermal.magnitude();
            d["er_total_J_s"] = er.total().magnitude();
            d["er_quantum_over_hbar"] = in_hbar(er.quantum);
            d["er_thermal_over_hbar"] = in_hbar(er.thermal);
            d["er_total_over_hbar"] = in_hbar(er.total());
            return d;
        },
        py::arg("weighting") = "parabolic", py::arg("rs_m") = 1e-3,
        py::arg("tb_K") = 0.0, py::arg("rel_tol") = 1e-9,
        py::arg("threads") = 1, py::arg("radii_m") = std::nullopt,
        py::arg("densities") = std::nullopt,
        "shape integrals, field variances, and the energy resolution of the "
        "weighted vacuum average");
    m.def(
        "convergence_check",
        [](const std::string& weighting, double r_s,
           const std::optional<std::vector<double>>& radii,
           const std::optional<std::vector<double>>& densities) {
            const ConvergenceVerdict v =
                convergence_check(make_weighting(weighting, r_s, radii,
                                                 densities));
            py::dict d;
            d["tail_exponent"] = v.tail_exponent_estimate;
            d["converges_quantum"] = v.converges_quantum;
            d["converges_thermal"] = v.converges_thermal;
            return d;
        },
        py::arg("weighting"), py::arg("rs_m") = 1e-3,
        py::arg("radii_m") = std::nullopt, py::arg("densities") = std::nullopt);

    // Survey pipeline over JSON or CSV dataset text.
    m.def(
        "survey_evaluate",
        [](const std::string& dataset_text, int threads) {
            py::list diagnostics;
            const std::vector<ErReport> reports =
                run_survey(dataset_text, threads, &diagnostics);
            py::list rows;
            for (const ErReport& r : reports) rows.append(report_to_dict(r));
            py::dict out;
            out["reports"] = rows;
            out["diagnostics"] = diagnostics;
            return out;
        },
        py::arg("dataset_text"), py::arg("threads") = 1,
        "evaluate a JSON or CSV dataset; returns reports plus row "
        "diagnostics");
    m.def(
        "survey_csv",
        [](const std::string& dataset_text, int threads) {
            return emit_csv(run_survey(dataset_text, threads, nullptr));
        },
        py::arg("dataset_text"), py::arg("threads") = 1);
    m.def(
        "survey_json",
        [](const std::string& dataset_text, int threads) {
            return emit_json(run_survey(dataset_text, threads, nullptr));
        },
        py::arg("dataset_text"), py::arg("threads") = 1);
    m.def(
        "survey_svg",
        [](const std::string& dataset_text, int threads) {
            return emit_svg(run_survey(dataset_text, threads, nullptr));
        },
        py::arg("dataset_text"), py::arg("threads") = 1);

    m.def("in_hbar", [](double action_J_s) {
        return in_hbar(joule_seconds(action_J_s));
    });
}
