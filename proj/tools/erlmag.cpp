#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erlmag/constants.hpp"
#include "erlmag/erl_metrics.hpp"
#include "erlmag/errors.hpp"
#include "erlmag/format.hpp"
#include "erlmag/quantum_limits.hpp"
#include "erlmag/survey.hpp"
#include "erlmag/zeropoint.hpp"

namespace {

using erlmag::Quantity;
using ordered_json = nlohmann::ordered_json;

// Structural command-line mistakes that CLI11 cannot express; mapped to
// exit 1 like its own parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string iso_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw erlmag::ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw erlmag::ParseError("cannot write file '" + path + "'");
    out << text;
    if (!out) throw erlmag::ParseError("cannot write file '" + path + "'");
}

// Collects "key value" lines and the JSON mirror; one of them is flushed
// depending on --format. Actions print in hbar by default, J s with --si.
struct Output {
    int precision = 6;
    bool json = false;
    bool si = false;
    bool stamp = false;
    std::vector<std::pair<std::string, std::string>> lines;
    ordered_json obj = ordered_json::object();

    void num(const std::string& key, double v) {
        lines.emplace_back(key, erlmag::fmt_g(v, precision));
        obj[key] = v;
    }
    void text(const std::string& key, const std::string& v) {
        lines.emplace_back(key, v);
        obj[key] = v;
    }
    void boolean(const std::string& key, bool v) {
        lines.emplace_back(key, v ? "true" : "false");
        obj[key] = v;
    }
    void action(const std::string& stem, const Quantity& q) {
        if (si)
            num(stem + "_J_s", q.magnitude());
        else
            num(stem + "_over_hbar", erlmag::in_hbar(q));
    }
    void action_both(const std::string& stem, const Quantity& q) {
        num(stem + "_J_s", q.magnitude());
        num(stem + "_over_hbar", erlmag::in_hbar(q));
    }

    void flush() {
        if (stamp) {
            obj["generated_at"] = iso_utc_now();
            lines.emplace_back("generated_at", obj["generated_at"]);
        }
        if (json) {
            std::cout << obj.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : lines) std::cout << k << " " << v << "\n";
        }
    }
};

struct ErArgs {
    std::string geometry;
    double standoff = 0, length = 0, area = 0, volume = 0, inductance = 0;
    double sb = 0, db = 0, duration = 0, sphi = 0, smu = 0, distance = 0;
    double alpha = 1.0;
    CLI::Option *standoff_o = nullptr, *length_o = nullptr, *area_o = nullptr,
                *volume_o = nullptr, *inductance_o = nullptr, *sb_o = nullptr,
                *db_o = nullptr, *duration_o = nullptr, *sphi_o = nullptr,
                *smu_o = nullptr, *distance_o = nullptr;
};

void run_er(const ErArgs& a, Output& out) {
    erlmag::SensorRecord rec;
    rec.name = "cli";
    rec.technology = "cli";

    const auto need = [](const CLI::Option* o, const char* flag,
                         const char* geom) {
        if (!o->count())
            throw UsageError(std::string("er: geometry '") + geom +
                             "' needs " + flag);
    };
    if (a.geometry == "point") {
        need(a.standoff_o, "--standoff", "point");
        rec.geometry = erlmag::PointGeometry{a.standoff};
    } else if (a.geometry == "linear") {
        need(a.length_o, "--length", "linear");
        rec.geometry = erlmag::LinearGeometry{a.length};
    } else if (a.geometry == "planar") {
        need(a.area_o, "--area", "planar");
        rec.geometry = erlmag::PlanarGeometry{a.area};
    } else if (a.geometry == "volumetric") {
        need(a.volume_o, "--volume", "volumetric");
        rec.geometry = erlmag::VolumetricGeometry{a.volume};
    } else if (a.geometry == "squid_loop") {
        erlmag::SquidLoopGeometry s;
        if (a.inductance_o->count()) s.inductance_H = a.inductance;
        if (a.area_o->count()) s.area_m2 = a.area;
        if (!s.inductance_H && !s.area_m2)
            throw UsageError(
                "er: geometry 'squid_loop' needs --inductance or --area");
        rec.geometry = s;
    } else {
        throw UsageError("er: unknown geometry '" + a.geometry + "'");
    }

    const int picks = (a.sb_o->count() ? 1 : 0) + (a.db_o->count() ? 1 : 0) +
                      (a.sphi_o->count() ? 1 : 0) + (a.smu_o->count() ? 1 : 0);
    if (picks != 1)
        throw UsageError(
            "er: give exactly one sensitivity (--sb, --db, --sphi, --smu)");
    if (a.sb_o->count()) {
        rec.sensitivity = erlmag::FieldPsdSpec{a.sb};
    } else if (a.db_o->count()) {
        if (!a.duration_o->count())
            throw UsageError("er: --db needs --duration");
        rec.sensitivity = erlmag::FieldRmsSpec{a.db, a.duration};
    } else if (a.sphi_o->count()) {
        rec.sensitivity = erlmag::FluxPsdSpec{a.sphi};
    } else {
        if (!a.distance_o->count())
            throw UsageError("er: --smu needs --distance");
        rec.sensitivity = erlmag::MomentPsdSpec{a.smu, a.distance};
    }

    // A loop with flux sensitivity but no pickup area has no l rule; it
    // still has the flux form of the energy resolution.
    if (a.geometry == "squid_loop" && a.sphi_o->count() &&
        !a.area_o->count()) {
        const Quantity e = erlmag::er_squid(erlmag::flux_psd(a.sphi),
                                            erlmag::henries(a.inductance));
        out.action_both("er_squid", e);
        return;
    }

    const erlmag::ErReport rep = erlmag::evaluate_record(rec);
    out.num("l_m", rep.l_m);
    out.num("db_sqrt_t", rep.db_sqrt_t);
    const Quantity er =
        erlmag::joule_seconds(rep.er_over_hbar * erlmag::constants::hbar);
    out.action_both("er", er);
    out.boolean("below_hbar", rep.below_hbar);
    if (a.geometry == "planar" || (a.geometry == "squid_loop" && a.area_o->count())) {
        out.num("area_bound_alpha", a.alpha);
        out.action("area_bound", erlmag::area_bound_threshold(a.alpha));
    }
    for (const std::string& c : rep.conversions_applied) {
        out.lines.emplace_back("conversion", c);
        out.obj["conversions"].push_back(c);
    }
}

void run_limits_list(Output& out) {
    if (out.json) {
        ordered_json rows = ordered_json::array();
        for (const erlmag::BoundResult& b : erlmag::limit_table()) {
            ordered_json j;
            j["name"] = b.bound_name;
            j["over_hbar"] = erlmag::in_hbar(b.value);
            j["saturation_condition"] = b.saturation_condition;
            rows.push_back(std::move(j));
        }
        out.obj["limits"] = std::move(rows);
        return;
    }
    for (const erlmag::BoundResult& b : erlmag::limit_table())
        out.lines.emplace_back(b.bound_name,
                               erlmag::fmt_f(erlmag::in_hbar(b.value), 6) +
                                   " hbar");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"energy resolution per bandwidth of magnetic-field sensors"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--precision", out.precision,
                   "significant digits for text output (1-15)")
        ->check(CLI::Range(1, 15));
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--si", out.si, "print actions in J s instead of hbar");
    app.add_flag("--stamp", out.stamp,
                 "include a generation timestamp (off by default so output "
                 "is reproducible)");

    // er: energy resolution of one sensor description.
    auto* er_cmd = app.add_subcommand(
        "er", "energy resolution per bandwidth of one sensor");
    er_cmd->fallthrough();
    ErArgs er_args;
    er_cmd->add_option("--geometry", er_args.geometry,
                       "point | linear | planar | volumetric | squid_loop")
        ->required();
    er_args.standoff_o =
        er_cmd->add_option("--standoff", er_args.standoff, "standoff l, m");
    er_args.length_o =
        er_cmd->add_option("--length", er_args.length, "length, m");
    er_args.area_o = er_cmd->add_option("--area", er_args.area, "area, m^2");
    er_args.volume_o =
        er_cmd->add_option("--volume", er_args.volume, "volume, m^3");
    er_args.inductance_o = er_cmd->add_option(
        "--inductance", er_args.inductance, "pickup inductance, H");
    er_args.sb_o =
        er_cmd->add_option("--sb", er_args.sb, "field PSD S_B, T^2/Hz");
    er_args.db_o = er_cmd->add_option(
        "--db", er_args.db, "rms field error of a discrete measurement, T");
    er_args.duration_o = er_cmd->add_option(
        "--duration", er_args.duration, "measurement duration, s");
    er_args.sphi_o =
        er_cmd->add_option("--sphi", er_args.sphi, "flux PSD S_Phi, Wb^2/Hz");
    er_args.smu_o = er_cmd->add_option(
        "--smu", er_args.smu, "moment PSD S_mu, (J/T)^2/Hz");
    er_args.distance_o = er_cmd->add_option(
        "--distance", er_args.distance, "dipole standoff for --smu, m");
    er_cmd->add_option("--alpha", er_args.alpha,
                       "area-form bound scale (threshold alpha hbar)");

    // limits: the named bound constants and the OPM/NVD evaluators.
    auto* limits_cmd =
        app.add_subcommand("limits", "quantum limit constants and evaluators");
    limits_cmd->fallthrough();
    bool limits_list = false;
    limits_cmd->add_flag("--list", limits_list,
                         "print the bound constants table (default)");
    auto* opm_cmd = limits_cmd->add_subcommand(
        "opm", "spin-destruction floor of an alkali-vapor magnetometer");
    opm_cmd->fallthrough();
    std::string opm_params;
    double opm_volume = 0.0;
    opm_cmd->add_option("--params", opm_params, "species parameter JSON file")
        ->required();
    auto* opm_volume_o = opm_cmd->add_option(
        "--volume", opm_volume, "cell volume, m^3 (adds the PSD floor)");
    auto* nvd_cmd = limits_cmd->add_subcommand(
        "nvd", "depolarization-backed bound alpha hbar");
    nvd_cmd->fallthrough();
    double nvd_alpha = 0.5;
    nvd_cmd->add_option("--alpha", nvd_alpha, "bound scale (default 0.5)");

    // spn-msi: projection-noise / self-field trade-off.
    auto* spn_cmd = app.add_subcommand(
        "spn-msi", "spin-projection-noise and self-field trade-off");
    spn_cmd->fallthrough();
    double spn_gamma = 0.0, spn_x = 0.0;
    spn_cmd->add_option("--gamma", spn_gamma, "gyromagnetic ratio, 1/(T s)")
        ->required();
    auto* spn_x_o = spn_cmd->add_option(
        "--x", spn_x, "spin-noise parameter T <dJy^2>/V, s/m^3");

    // ml: state-flip minimum field.
    auto* ml_cmd = app.add_subcommand(
        "ml", "minimum field resolvable by driving a state flip");
    ml_cmd->fallthrough();
    double ml_volume = 0.0, ml_time = 0.0, ml_b0 = 0.0;
    ml_cmd->add_option("--volume", ml_volume, "sensing volume, m^3")
        ->required();
    ml_cmd->add_option("--time", ml_time, "measurement duration, s")
        ->required();
    auto* ml_b0_o =
        ml_cmd->add_option("--b0", ml_b0, "bias field for the perturbative "
                                          "variant, T");

    // bb: one-bit messaging floor.
    auto* bb_cmd = app.add_subcommand(
        "bb", "one-bit communication floor for a sensing sphere");
    bb_cmd->fallthrough();
    double bb_radius = 0.0, bb_beta = 0.0, bb_prefactor = 1.0;
    bb_cmd->add_option("--radius", bb_radius, "sphere radius, m")->required();
    auto* bb_beta_o = bb_cmd->add_option(
        "--beta", bb_beta, "field in units of the minimum (>= 1)");
    bb_cmd->add_option("--prefactor", bb_prefactor,
                       "resolvable-increment prefactor (default 1)");

    // zeropoint: weighted vacuum + thermal field variance and E_R.
    auto* zp_cmd = app.add_subcommand(
        "zeropoint", "zero-point and thermal field variance of a weighted "
                     "average, and the resulting energy resolution");
    zp_cmd->fallthrough();
    std::string zp_weighting;
    double zp_rs = 0.0, zp_tb = 0.0, zp_rel_tol = 1e-9;
    int zp_threads = 1;
    zp_cmd->add_option("--weighting", zp_weighting,
                       "parabolic | tophat | sampled-profile JSON file")
        ->required();
    zp_cmd->add_option("--rs", zp_rs, "sphere radius r_S, m")->required();
    zp_cmd->add_option("--tb", zp_tb, "bath temperature, K (default 0)");
    zp_cmd->add_option("--rel-tol", zp_rel_tol,
                       "shape-integral relative tolerance (default 1e-9)");
    zp_cmd->add_option("--threads", zp_threads,
                       "tail-segment workers; output is identical for any "
                       "value")
        ->check(CLI::Range(1, 256));

    // survey: dataset -> report pipeline.
    auto* survey_cmd = app.add_subcommand(
        "survey", "evaluate a sensor dataset and emit csv/json/svg");
    survey_cmd->fallthrough();
    std::string survey_in, survey_out;
    int survey_threads = 1;
    survey_cmd->add_option("--in", survey_in,
                           "dataset file (.json or .csv), or - for stdin")
        ->required();
    survey_cmd->add_option("--out", survey_out,
                           "report file; format from extension "
                           "(.csv, .json, .svg); stdout when omitted");
    survey_cmd->add_option("--threads", survey_threads,
                           "record evaluation workers; output is identical "
                           "for any value")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    out.json = format == "json";

    try {
        if (*er_cmd) {
            run_er(er_args, out);
        } else if (*limits_cmd) {
            if (*opm_cmd) {
                const erlmag::SpeciesParams p =
                    erlmag::load_species_json(read_input(opm_params));
                out.text("species", p.label);
                out.action("limit", erlmag::opm_serf_limit(p));
                if (opm_volume_o->count()) {
                    out.num("volume_m3", opm_volume);
                    out.num("sb_floor_T2_per_Hz",
                            erlmag::opm_serf_sb_floor(
                                p, erlmag::cubic_metres(opm_volume))
                                .magnitude());
                }
            } else if (*nvd_cmd) {
                out.num("alpha", nvd_alpha);
                out.action("nvd", erlmag::nvd_limit(nvd_alpha));
            } else {
                (void)limits_list;
                run_limits_list(out);
            }
        } else if (*spn_cmd) {
            const erlmag::SpnMsiConfig cfg{spn_gamma};
            out.num("c_T_s", cfg.C());
            out.num("d_T_m3", cfg.D());
            const erlmag::SpnMsiBound b = erlmag::spn_msi_bound(cfg);
            out.num("x_opt_s_per_m3", b.x_opt.magnitude());
            out.action("bound", b.bound);
            if (spn_x_o->count())
                out.action("er_at_x",
                           erlmag::spn_msi_er(
                               Quantity(spn_x, erlmag::dim::second_per_volume),
                               cfg));
        } else if (*ml_cmd) {
            out.num("b_min_T",
                    erlmag::ml_min_field(erlmag::cubic_metres(ml_volume),
                                         erlmag::seconds(ml_time))
                        .magnitude());
            if (ml_b0_o->count())
                out.num("db_min_T",
                        erlmag::ml_perturbative_min(
                            erlmag::teslas(ml_b0),
                            erlmag::cubic_metres(ml_volume),
                            erlmag::seconds(ml_time))
                            .magnitude());
        } else if (*bb_cmd) {
            out.num("b_min_T",
                    erlmag::bb_min_field(erlmag::metres(bb_radius)).magnitude());
            if (bb_beta_o->count())
                out.num("resolvable_increment",
                        erlmag::bb_resolvable_increment(bb_beta, bb_prefactor));
        } else if (*zp_cmd) {
            erlmag::RadialWeighting w = [&] {
                if (zp_weighting == "parabolic")
                    return erlmag::RadialWeighting::parabolic(zp_rs);
                if (zp_weighting == "tophat")
                    return erlmag::RadialWeighting::tophat(zp_rs);
                ordered_json j;
                try {
                    j = ordered_json::parse(read_input(zp_weighting));
                    return erlmag::RadialWeighting::from_samples(
                               zp_rs, j.at("radii_m").get<std::vector<double>>(),
                               j.at("densities").get<std::vector<double>>())
                        .normalized();
                } catch (const nlohmann::json::exception& e) {
                    throw erlmag::ParseError(
                        std::string("weighting file: ") + e.what());
                }
            }();
            erlmag::ZeropointOptions opts;
            opts.rel_tol = zp_rel_tol;
            opts.threads = zp_threads;
            out.text("weighting", zp_weighting);
            out.num("rs_m", zp_rs);
            out.num("tb_K", zp_tb);
            const erlmag::ConvergenceVerdict v = erlmag::convergence_check(w);
            out.num("tail_exponent", v.tail_exponent_estimate);
            out.boolean("converges_quantum", v.converges_quantum);
            out.boolean("converges_thermal", v.converges_thermal);
            const double iq = erlmag::quantum_shape_integral(w, opts);
            const double it = erlmag::thermal_shape_integral(w, opts);
            out.num("i_q", iq);
            out.num("i_t", it);
            const erlmag::FieldVariance var =
                erlmag::field_variance(w, zp_tb, opts);
            out.num("variance_quantum_T2", var.quantum.magnitude());
            out.num("variance_thermal_T2", var.thermal.magnitude());
            const erlmag::ZeropointEnergy er =
                erlmag::er_zeropoint_split(w, zp_tb, opts);
            out.action("er_quantum", er.quantum);
            out.action("er_thermal", er.thermal);
            out.action("er_total", er.total());
        } else if (*survey_cmd) {
            const std::string text = read_input(survey_in);
            erlmag::Dataset ds;
            if (survey_in.size() >= 4 &&
                survey_in.substr(survey_in.size() - 4) == ".csv")
                ds = erlmag::load_dataset_csv(text);
            else if (survey_in.size() >= 5 &&
                     survey_in.substr(survey_in.size() - 5) == ".json")
                ds = erlmag::load_dataset_json(text);
            else
                ds = erlmag::load_dataset(text);
            for (const erlmag::RowDiagnostic& d : ds.diagnostics)
                std::cerr << "survey: input row " << d.row << ": " << d.message
                          << "\n";
            std::vector<erlmag::RowDiagnostic> eval_diags;
            const std::vector<erlmag::ErReport> reports =
                erlmag::evaluate_dataset(ds, eval_diags, survey_threads);
            for (const erlmag::RowDiagnostic& d : eval_diags)
                std::cerr << "survey: record " << d.row << ": " << d.message
                          << "\n";

            std::string kind;
            if (survey_out.empty()) {
                kind = out.json ? "json" : "csv";
            } else {
                const auto dot = survey_out.rfind('.');
                kind = dot == std::string::npos ? ""
                                                : survey_out.substr(dot + 1);
                if (kind != "csv" && kind != "json" && kind != "svg")
                    throw UsageError(
                        "survey: --out must end in .csv, .json, or .svg");
            }
            std::string doc;
            if (kind == "csv") {
                doc = erlmag::emit_csv(reports);
                if (out.stamp)
                    doc = "# generated_at " + iso_utc_now() + "\n" + doc;
            } else if (kind == "json") {
                doc = erlmag::emit_json(reports);
                if (out.stamp) {
                    ordered_json root;
                    root["generated_at"] = iso_utc_now();
                    root["reports"] = ordered_json::parse(doc);
                    doc = root.dump(2) + "\n";
                }
            } else {
                doc = erlmag::emit_svg(reports);
                if (out.stamp)
                    doc = "<!-- generated_at " + iso_utc_now() + " -->\n" + doc;
            }
            if (survey_out.empty())
                std::cout << doc;
            else
                write_output(survey_out, doc);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "erlmag: " << e.what() << "\n";
        return 1;
    } catch (const erlmag::NonConvergentIntegral& e) {
        std::cerr << "erlmag: NonConvergentIntegral: " << e.what() << "\n";
        return 2;
    } catch (const erlmag::DimensionError& e) {
        std::cerr << "erlmag: DimensionError: " << e.what() << "\n";
        return 2;
    } catch (const erlmag::DomainError& e) {
        std::cerr << "erlmag: DomainError: " << e.what() << "\n";
        return 2;
    } catch (const erlmag::ParseError& e) {
        std::cerr << "erlmag: ParseError: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "erlmag: error: " << e.what() << "\n";
        return 2;
    }

    out.flush();
    return 0;
}
