#pragma once

#include <optional>

#include "frp/geometry.hpp"

namespace frp {

// Units: kN, mm, mm^2, mm^4 in, MPa out.

/// N / A in MPa.
double uniform_stress(double force_kN, double area_mm2);

/// M = N e in kN*mm.
double bending_moment(double force_kN, double eccentricity_mm);

/// N/A + (M_1/I_1) c_2 - (M_2/I_2) c_1 in MPa; (c_1, c_2) are principal-frame coordinates
/// relative to the weighted centroid.
double stress_at_point(double force_kN, double area_mm2, double M_1, double M_2, double I_1, double I_2, double c_1,
                       double c_2);

/// pi d^2 / 4.
double declared_area(double diameter_mm);

double percent_increase(double base, double value);
double percent_reduction(double base, double value);

struct StressReport {
    double force_kN = 0.0;
    std::optional<double> sigma_exp;  // against the declared area
    double sigma_C = 0.0;
    double moment_kNmm = 0.0;  // N * |shift|
    std::optional<double> sigma_A;
    std::optional<double> sigma_E;
    std::optional<double> increase_pct_E;
    std::optional<PointPx> point_A;
    std::optional<PointPx> point_E;
};

/// Centric stress at the centroid plus eccentric stresses at the two boundary points on the
/// shift line; E is the one with the larger stress. Zero shift yields centric values only.
StressReport critical_point_stresses(const SectionProperties& props, double force_kN,
                                     std::optional<double> declared_area_mm2 = std::nullopt);

}  // namespace frp
