#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "erlmag/constants.hpp"
#include "erlmag/errors.hpp"
#include "erlmag/survey.hpp"

using namespace erlmag;

namespace {

SensorRecord opm_record() {
    SensorRecord r;
    r.name = "opm";
    r.technology = "OPM";
    r.geometry = VolumetricGeometry{1e-6};
    r.sensitivity = FieldPsdSpec{1e-30};
    return r;
}

const char* kThreeRecordJson = R"([
  {"name": "a", "technology": "OPM",
   "geometry": {"type": "volumetric", "volume_m3": 1e-6},
   "sensitivity": {"type": "field_psd", "value": 1.0, "units": "fT/sqrtHz"},
   "mode": "continuous", "reference": "r"},
  {"name": "bad", "technology": "NVD",
   "geometry": {"type": "volumetric", "volume_m3": 1e-6},
   "sensitivity": {"type": "moment_psd", "value": 1.0, "units": "mu_B/sqrtHz",
                   "distance_m": 1e-8},
   "mode": "continuous", "reference": "r"},
  {"name": "c", "technology": "SQUID",
   "geometry": {"type": "squid_loop", "inductance_H": 1e-10, "area_m2": 1e-10},
   "sensitivity": {"type": "flux_psd", "value": 1.0, "units": "uPhi0/sqrtHz"},
   "mode": "continuous", "reference": "r"}
])";

}  // namespace

TEST_CASE("json loader keeps valid rows and reports bad ones") {
    const Dataset ds = load_dataset_json(kThreeRecordJson);
    REQUIRE(ds.records.size() == 2);
    REQUIRE(ds.diagnostics.size() == 1);
    CHECK(ds.diagnostics[0].row == 2);
    CHECK(ds.diagnostics[0].message.find("point geometry") != std::string::npos);
    CHECK(ds.records[0].name == "a");
    CHECK(ds.records[1].name == "c");

    CHECK(load_dataset_json("[]").records.empty());
    CHECK_THROWS_AS(load_dataset_json("{\"not\": \"array\"}"), ParseError);
    CHECK_THROWS_AS(load_dataset_json("nonsense"), ParseError);
}

TEST_CASE("csv loader mirrors the json schema") {
    const std::string csv =
        "name,technology,geometry_type,l_m,length_m,area_m2,volume_m3,"
        "inductance_H,sensitivity_type,value,units,distance_m,duration_s,"
        "mode,duty_accounting,reference\n"
        "\"x, quoted\",OPM,volumetric,,,,1e-6,,field_psd,1.0,fT/sqrtHz,,,"
        "continuous,,\"ref \"\"quoted\"\"\"\n"
        "bad,NVD,point,1e-8,,,,,moment_psd,oops,mu_B/sqrtHz,1e-8,,"
        "continuous,,r\n";
    const Dataset ds = load_dataset_csv(csv);
    REQUIRE(ds.records.size() == 1);
    CHECK(ds.records[0].name == "x, quoted");
    CHECK(ds.records[0].reference == "ref \"quoted\"");
    REQUIRE(ds.diagnostics.size() == 1);
    CHECK(ds.diagnostics[0].row == 2);
    CHECK(ds.diagnostics[0].message.find("not a number") != std::string::npos);

    CHECK_THROWS_AS(load_dataset_csv("name,technology,bogus\na,b,c\n"),
                    ParseError);
    CHECK_THROWS_AS(load_dataset_csv("name,technology\na,b\n"), ParseError);
    CHECK(load_dataset_csv("").records.empty());

    // Sniffing: leading whitespace then '[' routes to json.
    CHECK(load_dataset("  \n[]").records.empty());
}

TEST_CASE("evaluate_record reference chains") {
    // Volumetric field PSD.
    const ErReport opm = evaluate_record(opm_record());
    CHECK(opm.l_m == doctest::Approx(1e-2).epsilon(1e-15));
    CHECK(opm.er_over_hbar == doctest::Approx(3772.97544936).epsilon(1e-11));
    CHECK(!opm.below_hbar);
    CHECK(opm.conversions_applied.empty());

    // Squid loop: area form plus the flux form in the conversions.
    SensorRecord squid;
    squid.name = "squid";
    squid.technology = "SQUID";
    SquidLoopGeometry g;
    g.inductance_H = 1e-10;
    g.area_m2 = 1e-10;
    squid.geometry = g;
    const double sphi = std::pow(1e-6 * constants::Phi0, 2.0);
    squid.sensitivity = FluxPsdSpec{sphi};
    const ErReport sq = evaluate_record(squid);
    CHECK(sq.er_over_hbar == doctest::Approx(1613.3004656).epsilon(1e-9));
    REQUIRE(sq.conversions_applied.size() == 2);
    CHECK(sq.conversions_applied[1].find("er_squid") != std::string::npos);
    CHECK(sq.conversions_applied[1].find("202.733") != std::string::npos);

    // Point sensor with moment sensitivity.
    SensorRecord nv;
    nv.name = "nv";
    nv.technology = "NVD";
    nv.geometry = PointGeometry{1e-8};
    nv.sensitivity =
        MomentPsdSpec{constants::mu_B * constants::mu_B, 1e-8};
    const ErReport nvr = evaluate_record(nv);
    CHECK(nvr.db_sqrt_t == doctest::Approx(1.8548020167e-6).epsilon(1e-10));
    CHECK(nvr.er_over_hbar == doctest::Approx(12980.131675).epsilon(1e-10));

    // Discrete rms sensitivity.
    SensorRecord bec;
    bec.name = "bec";
    bec.technology = "BEC";
    bec.geometry = VolumetricGeometry{1e-15};
    bec.sensitivity = FieldRmsSpec{1e-13, 1.0};
    bec.pulsed = true;
    bec.duty_accounting = "note";
    const ErReport br = evaluate_record(bec);
    CHECK(br.below_hbar);
    CHECK(br.er_over_hbar < 1.0);
    REQUIRE(br.conversions_applied.size() == 2);
    CHECK(br.conversions_applied[1].find("duty-adjusted") != std::string::npos);

    // Squid loop without an area has no l; the error points at er_squid.
    SensorRecord bare;
    bare.name = "bare";
    bare.technology = "SQUID";
    SquidLoopGeometry g2;
    g2.inductance_H = 1e-10;
    bare.geometry = g2;
    bare.sensitivity = FluxPsdSpec{sphi};
    CHECK_THROWS_WITH_AS(evaluate_record(bare), doctest::Contains("er_squid"),
                         DomainError);
}

TEST_CASE("report invariant: er recomputes from the emitted fields") {
    const Dataset ds = load_dataset_json(kThreeRecordJson);
    std::vector<RowDiagnostic> diags;
    const auto reports = evaluate_dataset(ds, diags, 1);
    CHECK(diags.empty());
    for (const ErReport& r : reports) {
        const double recomputed = r.db_sqrt_t * r.db_sqrt_t * r.l_m * r.l_m *
                                  r.l_m /
                                  (2.0 * constants::mu0 * constants::hbar);
        CHECK(r.er_over_hbar == doctest::Approx(recomputed).epsilon(1e-12));
        CHECK(r.below_hbar == (r.er_over_hbar < 1.0));
    }
}

TEST_CASE("reference-line records give er_over_hbar = 1 over 12 decades") {
    for (int d = -9; d <= 3; ++d) {
        const double l = std::pow(10.0, d);
        SensorRecord r;
        r.name = "line";
        r.technology = "synthetic";
        r.geometry = VolumetricGeometry{l * l * l};
        r.sensitivity =
            FieldPsdSpec{2.0 * constants::mu0 * constants::hbar / (l * l * l)};
        const ErReport rep = evaluate_record(r);
        CHECK(rep.er_over_hbar == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("classification monotonicity in the noise level") {
    // Increasing S_B at fixed geometry never flips below_hbar false -> true.
    bool prev_below = true;
    for (int i = 0; i < 60; ++i) {
        SensorRecord r = opm_record();
        r.sensitivity = FieldPsdSpec{1e-36 * std::pow(10.0, i * 0.2)};
        const bool below = evaluate_record(r).below_hbar;
        CHECK((prev_below || !below));
        prev_below = below;
    }
}

TEST_CASE("evaluate_dataset is order-preserving, parallel, diagnosed") {
    Dataset ds;
    for (int i = 0; i < 40; ++i) {
        SensorRecord r = opm_record();
        r.name = "r" + std::to_string(i);
        if (i == 17) r.geometry = LinearGeometry{1e-2};  // no l rule
        ds.records.push_back(r);
    }
    std::vector<RowDiagnostic> d1, d4;
    const auto a = evaluate_dataset(ds, d1, 1);
    const auto b = evaluate_dataset(ds, d4, 4);
    REQUIRE(a.size() == 39);
    REQUIRE(b.size() == 39);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].row == 18);
    CHECK(d4[0].row == 18);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].er_over_hbar == b[i].er_over_hbar);  // bitwise
    }
    CHECK(a[16].name == "r16");
    CHECK(a[17].name == "r18");
}

TEST_CASE("csv round trip preserves the numbers") {
    Dataset ds = load_dataset_json(kThreeRecordJson);
    SensorRecord tricky = opm_record();
    tricky.name = "comma, quote \" and\nnewline";
    ds.records.push_back(tricky);
    std::vector<RowDiagnostic> diags;
    const auto reports = evaluate_dataset(ds, diags, 1);
    const std::string csv = emit_csv(reports);
    const auto back = load_report_csv(csv);
    REQUIRE(back.size() == reports.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].name == reports[i].name);
        CHECK(back[i].l_m == reports[i].l_m);                    // bitwise
        CHECK(back[i].db_sqrt_t == reports[i].db_sqrt_t);        // bitwise
        CHECK(back[i].er_over_hbar == reports[i].er_over_hbar);  // bitwise
        CHECK(back[i].below_hbar == reports[i].below_hbar);
        CHECK(back[i].conversions_applied == reports[i].conversions_applied);
    }
    // '#' lines are stamp comments, skipped on load.
    const auto stamped = load_report_csv("# generated_at now\n" + csv);
    CHECK(stamped.size() == reports.size());

    // Headers-only output for an empty report list.
    CHECK(emit_csv({}) ==
          "name,technology,l_m,dB_sqrtT,er_over_hbar,below_hbar,conversions\n");
    CHECK(emit_json({}) == "[]\n");
}

TEST_CASE("svg scatter encodes the mapping and the reference line") {
    std::vector<ErReport> reports;
    for (int d = -8; d <= -2; d += 3) {
        const double l = std::pow(10.0, d);
        SensorRecord r;
        r.name = "line" + std::to_string(d);
        r.technology = "synthetic";
        r.geometry = VolumetricGeometry{l * l * l};
        r.sensitivity =
            FieldPsdSpec{2.0 * constants::mu0 * constants::hbar / (l * l * l)};
        reports.push_back(evaluate_record(r));
    }
    const std::string svg = emit_svg(reports);

    // Pull a double attribute out of the markup.
    const auto attr = [&svg](const std::string& name,
                             std::size_t from) -> double {
        const std::size_t k = svg.find(name + "=\"", from);
        REQUIRE(k != std::string::npos);
        const std::size_t s = k + name.size() + 2;
        return std::stod(svg.substr(s, svg.find('"', s) - s));
    };
    const double xmin = attr("data-log10-xmin", 0);
    const double xmax = attr("data-log10-xmax", 0);
    const double ymin = attr("data-log10-ymin", 0);
    const double ymax = attr("data-log10-ymax", 0);
    const double px0 = attr("data-plot-x", 0);
    const double py0 = attr("data-plot-y", 0);
    const double pw = attr("data-plot-width", 0);
    const double ph = attr("data-plot-height", 0);

    // Circles with data-* fields recompute to their own cx/cy, and the
    // er = 1 construction puts them on the reference line.
    std::size_t pos = svg.find("<g class=\"points\">");
    REQUIRE(pos != std::string::npos);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        pos = svg.find("<circle", pos + 1);
        REQUIRE(pos != std::string::npos);
        const double cx = attr("cx", pos);
        const double cy = attr("cy", pos);
        const double l = attr("data-l-m", pos);
        const double db = attr("data-db-sqrt-t", pos);
        const double want_cx =
            px0 + (std::log10(l) - xmin) / (xmax - xmin) * pw;
        const double want_cy =
            py0 + ph - (std::log10(db) - ymin) / (ymax - ymin) * ph;
        CHECK(std::abs(cx - want_cx) <= 0.01);
        CHECK(std::abs(cy - want_cy) <= 0.01);

        // Reference line in data coordinates at this l.
        const double line_db = std::sqrt(2.0 * constants::mu0 *
                                         constants::hbar / (l * l * l));
        const double line_cy =
            py0 + ph - (std::log10(line_db) - ymin) / (ymax - ymin) * ph;
        CHECK(std::abs(cy - line_cy) <= 0.02);
    }

    // Two equal-er points define a slope of -3/2 in data coordinates.
    const double lx1 = std::log10(reports[0].l_m);
    const double ly1 = std::log10(reports[0].db_sqrt_t);
    const double lx2 = std::log10(reports[2].l_m);
    const double ly2 = std::log10(reports[2].db_sqrt_t);
    CHECK((ly2 - ly1) / (lx2 - lx1) == doctest::Approx(-1.5).epsilon(1e-9));

    CHECK(svg.find("class=\"ref\"") != std::string::npos);
    CHECK(svg.find("tech-synthetic") != std::string::npos);
    CHECK_THROWS_AS(emit_svg({}), DomainError);
}

TEST_CASE("emit_svg rejects degenerate points") {
    ErReport r;
    r.name = "zero";
    r.technology = "x";
    r.l_m = 0.0;
    r.db_sqrt_t = 1.0;
    CHECK_THROWS_AS(emit_svg({r}), DomainError);
}
