#pragma once

#include <optional>
#include <variant>

#include "erlmag/quantity.hpp"

namespace erlmag {

// Sensor geometry variants. Values are SI magnitudes; validation happens in
// the operations so records can be constructed field by field.
struct PointGeometry {
    double standoff_m;  // minimum source-detector distance
};
struct LinearGeometry {
    double length_m;
};
struct PlanarGeometry {
    double area_m2;
};
struct VolumetricGeometry {
    double volume_m3;
};
struct SquidLoopGeometry {
    std::optional<double> inductance_H;
    std::optional<double> area_m2;
};

using SensorGeometry = std::variant<PointGeometry, LinearGeometry, PlanarGeometry,
                                    VolumetricGeometry, SquidLoopGeometry>;

// Raw sensitivity as published, before normalization to a field PSD.
struct FieldPsdSpec {
    double sb_T2_per_Hz;
};
struct FieldRmsSpec {
    double db_T;
    double duration_s;
};
struct FluxPsdSpec {
    double sphi_Wb2_per_Hz;
};
struct MomentPsdSpec {
    double smu_J2_per_T2_Hz;
    double distance_m;  // standoff at which the dipole field is evaluated
};

using SensitivitySpec =
    std::variant<FieldPsdSpec, FieldRmsSpec, FluxPsdSpec, MomentPsdSpec>;

}  // namespace erlmag
