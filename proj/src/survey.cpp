#include "erlmag/survey.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>

#include <json.hpp>

#include "erlmag/constants.hpp"
#include "erlmag/erl_metrics.hpp"
#include "erlmag/errors.hpp"
#include "erlmag/format.hpp"
#include "erlmag/quadrature.hpp"

namespace erlmag {

namespace {

using ordered_json = nlohmann::ordered_json;

// Accepted unit strings per sensitivity type. Amplitude entries are
// per-root-hertz values scaled to SI and squared to a PSD.
struct UnitRule {
    const char* name;
    double scale;
    bool amplitude;
};

constexpr UnitRule kFieldPsdUnits[] = {
    {"T^2/Hz", 1.0, false},
    {"T/sqrtHz", 1.0, true},
    {"fT/sqrtHz", 1e-15, true},
};
constexpr UnitRule kFluxPsdUnits[] = {
    {"Wb^2/Hz", 1.0, false},
    {"Phi0/sqrtHz", constants::Phi0, true},
    {"uPhi0/sqrtHz", 1e-6 * constants::Phi0, true},
};
constexpr UnitRule kMomentPsdUnits[] = {
    {"(J/T)^2/Hz", 1.0, false},
    {"mu_B/sqrtHz", constants::mu_B, true},
};

template <std::size_t N>
double to_psd(double value, const std::string& units, const char* type,
              const UnitRule (&rules)[N]) {
    for (const UnitRule& r : rules) {
        if (units == r.name) {
            if (!r.amplitude) return value * r.scale;
            const double amp = value * r.scale;
            return amp * amp;
        }
    }
    std::string allowed;
    for (const UnitRule& r : rules) {
        if (!allowed.empty()) allowed += ", ";
        allowed += r.name;
    }
    throw ParseError(std::string(type) + ": unknown units '" + units +
                     "' (expected one of: " + allowed + ")");
}

std::string require_string(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw ParseError(std::string("missing or non-string field '") + key +
                         "'");
    return j.at(key).get<std::string>();
}

double require_number(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ParseError(std::string("missing or non-numeric field '") + key +
                         "'");
    return j.at(key).get<double>();
}

std::optional<double> optional_number(const ordered_json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number())
        throw ParseError(std::string("non-numeric field '") + key + "'");
    return j.at(key).get<double>();
}

SensorGeometry parse_geometry(const ordered_json& g) {
    const std::string type = require_string(g, "type");
    if (type == "point") return PointGeometry{require_number(g, "l_m")};
    if (type == "linear") return LinearGeometry{require_number(g, "length_m")};
    if (type == "planar") return PlanarGeometry{require_number(g, "area_m2")};
    if (type == "volumetric")
        return VolumetricGeometry{require_number(g, "volume_m3")};
    if (type == "squid_loop") {
        SquidLoopGeometry s;
        s.inductance_H = optional_number(g, "inductance_H");
        s.area_m2 = optional_number(g, "area_m2");
        if (!s.inductance_H && !s.area_m2)
            throw ParseError(
                "squid_loop geometry needs inductance_H or area_m2");
        return s;
    }
    throw ParseError("unknown geometry type '" + type +
                     "' (expected point, linear, planar, volumetric, "
                     "squid_loop)");
}

SensitivitySpec parse_sensitivity(const ordered_json& s) {
    const std::string type = require_string(s, "type");
    const double value = require_number(s, "value");
    const std::string units = require_string(s, "units");
    if (type == "field_psd")
        return FieldPsdSpec{to_psd(value, units, "field_psd", kFieldPsdUnits)};
    if (type == "field_rms") {
        if (units != "T")
            throw ParseError("field_rms: unknown units '" + units +
                             "' (expected one of: T)");
        const auto duration = optional_number(s, "duration_s");
        if (!duration)
            throw ParseError("field_rms sensitivity needs duration_s");
        return FieldRmsSpec{value, *duration};
    }
    if (type == "flux_psd")
        return FluxPsdSpec{to_psd(value, units, "flux_psd", kFluxPsdUnits)};
    if (type == "moment_psd") {
        const auto distance = optional_number(s, "distance_m");
        if (!distance)
            throw ParseError("moment_psd sensitivity needs distance_m");
        return MomentPsdSpec{to_psd(value, units, "moment_psd", kMomentPsdUnits),
                             *distance};
    }
    throw ParseError("unknown sensitivity type '" + type +
                     "' (expected field_psd, field_rms, flux_psd, "
                     "moment_psd)");
}

SensorRecord parse_record(const ordered_json& j) {
    if (!j.is_object()) throw ParseError("record must be a JSON object");
    SensorRecord r;
    r.name = require_string(j, "name");
    r.technology = require_string(j, "technology");
    if (!j.contains("geometry"))
        throw ParseError("missing or non-string field 'geometry'");
    r.geometry = parse_geometry(j.at("geometry"));
    if (!j.contains("sensitivity"))
        throw ParseError("missing or non-string field 'sensitivity'");
    r.sensitivity = parse_sensitivity(j.at("sensitivity"));

    const std::string mode = require_string(j, "mode");
    if (mode == "pulsed") {
        r.pulsed = true;
        if (j.contains("duty_accounting"))
            r.duty_accounting = require_string(j, "duty_accounting");
    } else if (mode == "continuous") {
        if (j.contains("duty_accounting") &&
            !j.at("duty_accounting").get<std::string>().empty())
            throw ParseError(
                "duty_accounting is only meaningful for pulsed mode");
    } else {
        throw ParseError("unknown mode '" + mode +
                         "' (expected continuous or pulsed)");
    }
    r.reference = j.contains("reference") && j.at("reference").is_string()
                      ? j.at("reference").get<std::string>()
                      : std::string();

    const bool flux = std::holds_alternative<FluxPsdSpec>(r.sensitivity);
    const bool moment = std::holds_alternative<MomentPsdSpec>(r.sensitivity);
    const bool squid = std::holds_alternative<SquidLoopGeometry>(r.geometry);
    const bool planar = std::holds_alternative<PlanarGeometry>(r.geometry);
    const bool point = std::holds_alternative<PointGeometry>(r.geometry);
    if (flux && !(squid || planar))
        throw ParseError(
            "flux_psd sensitivity requires squid_loop or planar geometry");
    if (moment && !point)
        throw ParseError("moment_psd sensitivity requires point geometry");
    return r;
}

// Whole-text CSV reader: quoted cells may hold commas, quotes ("" escape)
// and newlines. Returns rows of cells; blank lines are dropped.
std::vector<std::vector<std::string>> parse_csv_table(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += ch;
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (ch == '\n') {
            if (any || !cell.empty()) {
                row.push_back(std::move(cell));
                rows.push_back(std::move(row));
            }
            row.clear();
            cell.clear();
            any = false;
        } else if (ch != '\r') {
            cell += ch;
            any = true;
        }
    }
    if (quoted) throw ParseError("CSV: unterminated quoted cell");
    if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

bool comment_row(const std::vector<std::string>& row) {
    return !row.empty() && !row[0].empty() && row[0][0] == '#';
}

double parse_double_cell(const std::string& cell, const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + cell.size())
        throw ParseError("column '" + column + "': not a number: '" + cell +
                         "'");
    return v;
}

const char* const kDatasetColumns[] = {
    "name",       "technology",   "geometry_type", "l_m",
    "length_m",   "area_m2",      "volume_m3",     "inductance_H",
    "sensitivity_type", "value",  "units",         "distance_m",
    "duration_s", "mode",         "duty_accounting", "reference"};

}  // namespace

Dataset load_dataset_json(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("survey JSON: ") + e.what());
    }
    if (!root.is_array())
        throw ParseError("survey JSON root must be an array of records");
    Dataset out;
    std::size_t row = 0;
    for (const auto& item : root) {
        ++row;
        try {
            out.records.push_back(parse_record(item));
        } catch (const Error& e) {
            out.diagnostics.push_back({row, e.what()});
        }
    }
    return out;
}

Dataset load_dataset_csv(const std::string& text) {
    const auto rows = parse_csv_table(text);
    std::size_t first = 0;
    while (first < rows.size() && comment_row(rows[first])) ++first;
    if (first == rows.size()) return {};

    const auto& header = rows[first];
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool known = false;
        for (const char* name : kDatasetColumns)
            if (header[i] == name) known = true;
        if (!known)
            throw ParseError("survey CSV: unknown column '" + header[i] + "'");
        if (!col.emplace(header[i], i).second)
            throw ParseError("survey CSV: duplicate column '" + header[i] +
                             "'");
    }
    for (const char* name :
         {"name", "technology", "geometry_type", "sensitivity_type", "value",
          "units", "mode"})
        if (!col.count(name))
            throw ParseError(std::string("survey CSV: missing column '") +
                             name + "'");

    const auto cell = [&](const std::vector<std::string>& row,
                          const char* name) -> std::string {
        const auto it = col.find(name);
        if (it == col.end() || it->second >= row.size()) return {};
        return row[it->second];
    };

    Dataset out;
    std::size_t data_row = 0;
    for (std::size_t i = first + 1; i < rows.size(); ++i) {
        if (comment_row(rows[i])) continue;
        ++data_row;
        try {
            ordered_json rec;
            rec["name"] = cell(rows[i], "name");
            rec["technology"] = cell(rows[i], "technology");
            ordered_json g;
            g["type"] = cell(rows[i], "geometry_type");
            for (const char* name :
                 {"l_m", "length_m", "area_m2", "volume_m3", "inductance_H"}) {
                const std::string c = cell(rows[i], name);
                if (!c.empty()) g[name] = parse_double_cell(c, name);
            }
            rec["geometry"] = g;
            ordered_json s;
            s["type"] = cell(rows[i], "sensitivity_type");
            s["value"] = parse_double_cell(cell(rows[i], "value"), "value");
            s["units"] = cell(rows[i], "units");
            for (const char* name : {"distance_m", "duration_s"}) {
                const std::string c = cell(rows[i], name);
                if (!c.empty()) s[name] = parse_double_cell(c, name);
            }
            rec["sensitivity"] = s;
            rec["mode"] = cell(rows[i], "mode");
            const std::string duty = cell(rows[i], "duty_accounting");
            if (!duty.empty()) rec["duty_accounting"] = duty;
            rec["reference"] = cell(rows[i], "reference");
            out.records.push_back(parse_record(rec));
        } catch (const Error& e) {
            out.diagnostics.push_back({data_row, e.what()});
        }
    }
    return out;
}

Dataset load_dataset(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        if (ch == '[' || ch == '{') return load_dataset_json(text);
        break;
    }
    return load_dataset_csv(text);
}

ErReport evaluate_record(const SensorRecord& record) {
    ErReport report;
    report.name = record.name;
    report.technology = record.technology;

    Quantity sb = field_psd(1.0);
    struct Normalize {
        const SensorRecord& rec;
        std::vector<std::string>& conv;
        Quantity operator()(const FieldPsdSpec& s) const {
            return field_psd(s.sb_T2_per_Hz);
        }
        Quantity operator()(const FieldRmsSpec& s) const {
            const Quantity out =
                teslas(s.db_T) * teslas(s.db_T) * seconds(s.duration_s);
            conv.push_back("rms_to_psd: S_B = dB^2 * T = " +
                           fmt_g(out.magnitude()) + " T^2/Hz");
            return out;
        }
        Quantity operator()(const FluxPsdSpec& s) const {
            std::optional<double> area;
            if (const auto* sq = std::get_if<SquidLoopGeometry>(&rec.geometry))
                area = sq->area_m2;
            else if (const auto* pl = std::get_if<PlanarGeometry>(&rec.geometry))
                area = pl->area_m2;
            if (!area)
                throw DomainError(
                    "flux-to-field conversion needs a pickup area; without "
                    "one only er_squid (S_Phi / (2 L)) is defined");
            const Quantity out = flux_noise_to_field_noise(
                flux_psd(s.sphi_Wb2_per_Hz), square_metres(*area));
            conv.push_back("flux_to_field: S_B = S_Phi / A^2 = " +
                           fmt_g(out.magnitude()) + " T^2/Hz");
            return out;
        }
        Quantity operator()(const MomentPsdSpec& s) const {
            const Quantity out = moment_noise_to_field_noise(
                moment_psd(s.smu_J2_per_T2_Hz), metres(s.distance_m));
            conv.push_back("moment_to_field: on-axis dipole at d = " +
                           fmt_g(s.distance_m) + " m, S_B = " +
                           fmt_g(out.magnitude()) + " T^2/Hz");
            return out;
        }
    };
    sb = std::visit(Normalize{record, report.conversions_applied},
                    record.sensitivity);

    const Quantity l = effective_linear_dimension(record.geometry);
    const Quantity er = er_general(sb, l);
    report.l_m = l.magnitude();
    report.db_sqrt_t = std::sqrt(sb.magnitude());
    report.er_over_hbar = in_hbar(er);
    report.below_hbar = report.er_over_hbar < 1.0;

    if (const auto* sq = std::get_if<SquidLoopGeometry>(&record.geometry)) {
        if (sq->inductance_H) {
            if (const auto* fx = std::get_if<FluxPsdSpec>(&record.sensitivity)) {
                const Quantity e1 = er_squid(flux_psd(fx->sphi_Wb2_per_Hz),
                                             henries(*sq->inductance_H));
                report.conversions_applied.push_back(
                    "er_squid: S_Phi / (2 L) = " + fmt_g(in_hbar(e1)) +
                    " hbar");
            }
        }
    }
    if (record.pulsed) {
        std::string note = "pulsed: sensitivity taken as duty-adjusted";
        if (!record.duty_accounting.empty())
            note += " (" + record.duty_accounting + ")";
        report.conversions_applied.push_back(std::move(note));
    }
    return report;
}

std::vector<ErReport> evaluate_dataset(const Dataset& dataset,
                                       std::vector<RowDiagnostic>& diagnostics,
                                       int threads) {
    const int n = static_cast<int>(dataset.records.size());
    std::vector<std::optional<ErReport>> slots(n);
    std::vector<std::string> failures(n);
    parallel_for_indices(0, n, threads < 1 ? 1 : threads, [&](int i) {
        try {
            slots[i] = evaluate_record(dataset.records[i]);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    std::vector<ErReport> out;
    out.reserve(dataset.records.size());
    for (int i = 0; i < n; ++i) {
        if (slots[i])
            out.push_back(std::move(*slots[i]));
        else
            diagnostics.push_back({static_cast<std::size_t>(i) + 1,
                                   failures[i]});
    }
    return out;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

constexpr const char* kReportHeader =
    "name,technology,l_m,dB_sqrtT,er_over_hbar,below_hbar,conversions";

}  // namespace

std::string emit_csv(const std::vector<ErReport>& reports) {
    std::string out = kReportHeader;
    out += '\n';
    for (const ErReport& r : reports) {
        out += csv_escape(r.name);
        out += ',';
        out += csv_escape(r.technology);
        out += ',';
        out += fmt_roundtrip(r.l_m);
        out += ',';
        out += fmt_roundtrip(r.db_sqrt_t);
        out += ',';
        out += fmt_roundtrip(r.er_over_hbar);
        out += ',';
        out += (r.below_hbar ? "true" : "false");
        out += ',';
        out += csv_escape(join(r.conversions_applied, "; "));
        out += '\n';
    }
    return out;
}

std::string emit_json(const std::vector<ErReport>& reports) {
    ordered_json root = ordered_json::array();
    for (const ErReport& r : reports) {
        ordered_json j;
        j["name"] = r.name;
        j["technology"] = r.technology;
        j["l_m"] = r.l_m;
        j["dB_sqrtT"] = r.db_sqrt_t;
        j["er_over_hbar"] = r.er_over_hbar;
        j["below_hbar"] = r.below_hbar;
        j["conversions"] = r.conversions_applied;
        root.push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

std::vector<ErReport> load_report_csv(const std::string& text) {
    const auto rows = parse_csv_table(text);
    std::size_t first = 0;
    while (first < rows.size() && comment_row(rows[first])) ++first;
    if (first == rows.size())
        throw ParseError("report CSV: missing header line");
    if (join(rows[first], ",") != kReportHeader)
        throw ParseError("report CSV: unexpected header '" +
                         join(rows[first], ",") + "'");
    std::vector<ErReport> out;
    for (std::size_t i = first + 1; i < rows.size(); ++i) {
        if (comment_row(rows[i])) continue;
        if (rows[i].size() != 7)
            throw ParseError("report CSV: expected 7 cells, got " +
                             std::to_string(rows[i].size()));
        ErReport r;
        r.name = rows[i][0];
        r.technology = rows[i][1];
        r.l_m = parse_double_cell(rows[i][2], "l_m");
        r.db_sqrt_t = parse_double_cell(rows[i][3], "dB_sqrtT");
        r.er_over_hbar = parse_double_cell(rows[i][4], "er_over_hbar");
        if (rows[i][5] == "true")
            r.below_hbar = true;
        else if (rows[i][5] == "false")
            r.below_hbar = false;
        else
            throw ParseError("report CSV: below_hbar must be true or false");
        if (!rows[i][6].empty()) {
            std::string item;
            const std::string& cellv = rows[i][6];
            std::size_t pos = 0;
            while (pos != std::string::npos) {
                const std::size_t next = cellv.find("; ", pos);
                item = cellv.substr(
                    pos, next == std::string::npos ? next : next - pos);
                r.conversions_applied.push_back(item);
                pos = next == std::string::npos ? next : next + 2;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

// Static scatter layout. All pixel math is plain double arithmetic on the
// logged data, so the emitted bytes are a pure function of the reports.
constexpr int kSvgW = 880;
constexpr int kSvgH = 620;
constexpr int kMarginL = 72;
constexpr int kMarginR = 24;
constexpr int kMarginT = 48;
constexpr int kMarginB = 64;

constexpr const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b4", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string css_class(const std::string& technology) {
    std::string out = "tech-";
    for (char ch : technology) {
        if (ch >= 'A' && ch <= 'Z') out += static_cast<char>(ch - 'A' + 'a');
        else if ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9'))
            out += ch;
        else
            out += '-';
    }
    if (out == "tech-") out += "untagged";
    return out;
}

std::string decade_label(int d) { return "1e" + std::to_string(d); }

}  // namespace

std::string emit_svg(const std::vector<ErReport>& reports) {
    if (reports.empty())
        throw DomainError("emit_svg: empty report list (csv/json accept it)");
    for (const ErReport& r : reports)
        if (!(r.l_m > 0.0) || !(r.db_sqrt_t > 0.0))
            throw DomainError("emit_svg: reports need positive l and noise");

    double lx_min = std::log10(reports[0].l_m), lx_max = lx_min;
    double ly_min = std::log10(reports[0].db_sqrt_t), ly_max = ly_min;
    for (const ErReport& r : reports) {
        lx_min = std::min(lx_min, std::log10(r.l_m));
        lx_max = std::max(lx_max, std::log10(r.l_m));
        ly_min = std::min(ly_min, std::log10(r.db_sqrt_t));
        ly_max = std::max(ly_max, std::log10(r.db_sqrt_t));
    }
    lx_min = std::floor(lx_min);
    lx_max = std::ceil(lx_max);
    ly_min = std::floor(ly_min);
    ly_max = std::ceil(ly_max);
    if (lx_min == lx_max) {
        lx_min -= 1.0;
        lx_max += 1.0;
    }
    if (ly_min == ly_max) {
        ly_min -= 1.0;
        ly_max += 1.0;
    }

    const double plot_w = kSvgW - kMarginL - kMarginR;
    const double plot_h = kSvgH - kMarginT - kMarginB;
    const auto px = [&](double lx) {
        return kMarginL + (lx - lx_min) / (lx_max - lx_min) * plot_w;
    };
    const auto py = [&](double ly) {
        return kMarginT + plot_h - (ly - ly_min) / (ly_max - ly_min) * plot_h;
    };

    // Distinct technologies in first-appearance order, keyed by class name
    // so case variants share one marker style.
    std::vector<std::pair<std::string, std::string>> legend;  // class, label
    for (const ErReport& r : reports) {
        const std::string cls = css_class(r.technology);
        bool seen = false;
        for (const auto& e : legend)
            if (e.first == cls) seen = true;
        if (!seen) legend.emplace_back(cls, r.technology);
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(kSvgW) + "\" height=\"" + std::to_string(kSvgH) +
           "\" viewBox=\"0 0 " + std::to_string(kSvgW) + " " +
           std::to_string(kSvgH) + "\"";
    svg += " data-plot-x=\"" + std::to_string(kMarginL) + "\"";
    svg += " data-plot-y=\"" + std::to_string(kMarginT) + "\"";
    svg += " data-plot-width=\"" + fmt_roundtrip(plot_w) + "\"";
    svg += " data-plot-height=\"" + fmt_roundtrip(plot_h) + "\"";
    svg += " data-log10-xmin=\"" + fmt_roundtrip(lx_min) + "\"";
    svg += " data-log10-xmax=\"" + fmt_roundtrip(lx_max) + "\"";
    svg += " data-log10-ymin=\"" + fmt_roundtrip(ly_min) + "\"";
    svg += " data-log10-ymax=\"" + fmt_roundtrip(ly_max) + "\">\n";

    svg += "<style>\n"
           "text{font-family:Helvetica,Arial,sans-serif;font-size:12px;"
           "fill:#222;}\n"
           ".title{font-size:15px;font-weight:bold;}\n"
           ".grid{stroke:#dddddd;stroke-width:1;}\n"
           ".frame{fill:none;stroke:#333333;stroke-width:1;}\n"
           ".ref{stroke:#555555;stroke-width:1.5;stroke-dasharray:7 4;}\n"
           ".pt{stroke:#20242c;stroke-width:0.6;fill-opacity:0.85;}\n"
           ".legend-box{fill:#ffffff;fill-opacity:0.9;stroke:#999999;}\n";
    for (std::size_t i = 0; i < legend.size(); ++i)
        svg += "." + legend[i].first + "{fill:" +
               kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))] + ";}\n";
    svg += "</style>\n";

    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kSvgW) +
           "\" height=\"" + std::to_string(kSvgH) + "\" fill=\"#ffffff\"/>\n";

    // Decade grid and tick labels; step up when the span is crowded.
    const int x_decades = static_cast<int>(lx_max - lx_min);
    const int y_decades = static_cast<int>(ly_max - ly_min);
    const int x_step = x_decades > 12 ? (x_decades + 11) / 12 : 1;
    const int y_step = y_decades > 10 ? (y_decades + 9) / 10 : 1;
    svg += "<g class=\"grid\">\n";
    for (int d = static_cast<int>(lx_min); d <= static_cast<int>(lx_max);
         d += x_step) {
        const std::string x = fmt_f(px(d), 2);
        svg += "<line x1=\"" + x + "\" y1=\"" + std::to_string(kMarginT) +
               "\" x2=\"" + x + "\" y2=\"" +
               fmt_f(kMarginT + plot_h, 2) + "\"/>\n";
    }
    for (int d = static_cast<int>(ly_min); d <= static_cast<int>(ly_max);
         d += y_step) {
        const std::string y = fmt_f(py(d), 2);
        svg += "<line x1=\"" + std::to_string(kMarginL) + "\" y1=\"" + y +
               "\" x2=\"" + fmt_f(kMarginL + plot_w, 2) + "\" y2=\"" + y +
               "\"/>\n";
    }
    svg += "</g>\n";
    for (int d = static_cast<int>(lx_min); d <= static_cast<int>(lx_max);
         d += x_step)
        svg += "<text x=\"" + fmt_f(px(d), 2) + "\" y=\"" +
               fmt_f(kMarginT + plot_h + 18, 2) +
               "\" text-anchor=\"middle\">" + decade_label(d) + "</text>\n";
    for (int d = static_cast<int>(ly_min); d <= static_cast<int>(ly_max);
         d += y_step)
        svg += "<text x=\"" + std::to_string(kMarginL - 8) + "\" y=\"" +
               fmt_f(py(d) + 4, 2) + "\" text-anchor=\"end\">" +
               decade_label(d) + "</text>\n";

    // Reference line er_over_hbar = 1: dB sqrt(T) = sqrt(2 mu0 hbar / l^3),
    // slope -3/2 in log-log, clipped to the plot box.
    {
        const double ly_at = 0.5 * std::log10(2.0 * constants::mu0 *
                                              constants::hbar);
        const auto line_y = [&](double lx) { return ly_at - 1.5 * lx; };
        // The line falls with lx; clip against the y window.
        double a = lx_min, b = lx_max;
        const double lx_at_ymax = (ly_at - ly_max) / 1.5;
        const double lx_at_ymin = (ly_at - ly_min) / 1.5;
        a = std::max(a, lx_at_ymax);
        b = std::min(b, lx_at_ymin);
        if (a < b) {
            svg += "<line class=\"ref\" data-line=\"er_over_hbar=1\" x1=\"" +
                   fmt_f(px(a), 2) + "\" y1=\"" + fmt_f(py(line_y(a)), 2) +
                   "\" x2=\"" + fmt_f(px(b), 2) + "\" y2=\"" +
                   fmt_f(py(line_y(b)), 2) + "\"/>\n";
            const double mid = 0.5 * (a + b);
            svg += "<text x=\"" + fmt_f(px(mid) + 8, 2) + "\" y=\"" +
                   fmt_f(py(line_y(mid)) - 8, 2) + "\">E_R = hbar</text>\n";
        }
    }

    svg += "<g class=\"points\">\n";
    for (const ErReport& r : reports) {
        svg += "<circle class=\"pt " + css_class(r.technology) + "\" cx=\"" +
               fmt_f(px(std::log10(r.l_m)), 2) + "\" cy=\"" +
               fmt_f(py(std::log10(r.db_sqrt_t)), 2) + "\" r=\"4.5\"";
        svg += " data-name=\"" + xml_escape(r.name) + "\"";
        svg += " data-technology=\"" + xml_escape(r.technology) + "\"";
        svg += " data-l-m=\"" + fmt_roundtrip(r.l_m) + "\"";
        svg += " data-db-sqrt-t=\"" + fmt_roundtrip(r.db_sqrt_t) + "\"";
        svg += " data-er-over-hbar=\"" + fmt_roundtrip(r.er_over_hbar) + "\"";
        svg += std::string(" data-below-hbar=\"") +
               (r.below_hbar ? "true" : "false") + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<rect class=\"frame\" x=\"" + std::to_string(kMarginL) +
           "\" y=\"" + std::to_string(kMarginT) + "\" width=\"" +
           fmt_f(plot_w, 2) + "\" height=\"" + fmt_f(plot_h, 2) + "\"/>\n";

    svg += "<text class=\"title\" x=\"" + std::to_string(kMarginL) +
           "\" y=\"28\">Field sensitivity versus sensor size</text>\n";
    svg += "<text x=\"" + fmt_f(kMarginL + plot_w / 2, 2) + "\" y=\"" +
           std::to_string(kSvgH - 16) + "\" text-anchor=\"middle\">"
           "effective linear dimension l (m)</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt_f(kMarginT + plot_h / 2, 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fmt_f(kMarginT + plot_h / 2, 2) + ")\">"
           "field noise dB sqrt(T)  (T sqrt(s))</text>\n";

    // Legend, top-right inside the plot.
    {
        const double box_w = 190.0;
        const double box_h = 14.0 + 18.0 * static_cast<double>(legend.size());
        const double bx = kMarginL + plot_w - box_w - 10.0;
        const double by = kMarginT + 10.0;
        svg += "<g class=\"legend\">\n";
        svg += "<rect class=\"legend-box\" x=\"" + fmt_f(bx, 2) + "\" y=\"" +
               fmt_f(by, 2) + "\" width=\"" + fmt_f(box_w, 2) +
               "\" height=\"" + fmt_f(box_h, 2) + "\"/>\n";
        for (std::size_t i = 0; i < legend.size(); ++i) {
            const double cy = by + 16.0 + 18.0 * static_cast<double>(i);
            svg += "<circle class=\"pt " + legend[i].first + "\" cx=\"" +
                   fmt_f(bx + 14.0, 2) + "\" cy=\"" + fmt_f(cy - 4.0, 2) +
                   "\" r=\"4.5\"/>\n";
            svg += "<text x=\"" + fmt_f(bx + 26.0, 2) + "\" y=\"" +
                   fmt_f(cy, 2) + "\">" + xml_escape(legend[i].second) +
                   "</text>\n";
        }
        svg += "</g>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace erlmag
