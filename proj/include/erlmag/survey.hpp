#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "erlmag/geometry.hpp"

namespace erlmag {

// One sensor entry of a sensitivity-versus-size survey.
struct SensorRecord {
    std::string name;
    std::string technology;
    SensorGeometry geometry;
    SensitivitySpec sensitivity;
    bool pulsed = false;
    std::string duty_accounting;  // pulsed records only; free text
    std::string reference;
};

// Problem found in one input row; `row` is 1-based over records (JSON) or
// data lines (CSV).
struct RowDiagnostic {
    std::size_t row = 0;
    std::string message;
};

// Parse result: rows that validated, plus a diagnostic per rejected row.
struct Dataset {
    std::vector<SensorRecord> records;
    std::vector<RowDiagnostic> diagnostics;
};

// Parse a survey dataset. The JSON form is an array of record objects; the
// CSV form is one header line plus one record per data line. load_dataset
// sniffs the format from the first non-space byte ('[' means JSON).
// A malformed container throws ParseError; malformed rows become
// diagnostics.
Dataset load_dataset_json(const std::string& text);
Dataset load_dataset_csv(const std::string& text);
Dataset load_dataset(const std::string& text);

// Evaluated energy resolution for one record. db_sqrt_t is the equivalent
// white field-noise amplitude sqrt(S_B) in T sqrt(s); er_over_hbar is
// S_B l^3 / (2 mu0 hbar); below_hbar is er_over_hbar < 1 exactly.
struct ErReport {
    std::string name;
    std::string technology;
    double l_m = 0.0;
    double db_sqrt_t = 0.0;
    double er_over_hbar = 0.0;
    bool below_hbar = false;
    std::vector<std::string> conversions_applied;
};

// Evaluate one record: normalize the sensitivity to a field PSD, pick the
// effective linear dimension, and form the energy resolution. Throws
// DomainError when the record admits no field-noise route.
ErReport evaluate_record(const SensorRecord& record);

// Evaluate every record, preserving input order. Failures are appended to
// `diagnostics` (row = 1-based record index) and skipped. The work is
// partitioned with a static stride, so results are identical for every
// `threads` value.
std::vector<ErReport> evaluate_dataset(const Dataset& dataset,
                                       std::vector<RowDiagnostic>& diagnostics,
                                       int threads = 1);

// Serialize reports. CSV columns: name, technology, l_m, dB_sqrtT,
// er_over_hbar, below_hbar, conversions (semicolon-joined). Numeric cells
// use shortest round-trip formatting. JSON is an array of report objects.
std::string emit_csv(const std::vector<ErReport>& reports);
std::string emit_json(const std::vector<ErReport>& reports);

// Log-log scatter of db_sqrt_t against l_m with the er_over_hbar = 1
// reference line, one marker class per technology, and a legend. Each
// marker carries data-* attributes with the report fields; the svg root
// carries the axis mapping so positions can be recomputed. Throws
// DomainError for an empty report list.
std::string emit_svg(const std::vector<ErReport>& reports);

// Parse emit_csv output back into reports ('#'-prefixed lines are skipped).
std::vector<ErReport> load_report_csv(const std::string& text);

}  // namespace erlmag
