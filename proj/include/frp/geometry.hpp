#pragma once

#include <optional>

#include "frp/types.hpp"

namespace frp {

// Physical frame: y points right along the columns, z points up (rows are -z). Lengths in mm.

/// Displacement from the geometric to the weighted centroid.
struct ShiftVector {
    double dx_mm = 0.0;
    double dy_mm = 0.0;
    double magnitude_mm = 0.0;
    double angle_deg = 0.0;  // (-180, 180], 0 for the zero vector
};

/// I_y = sum z^2 dA, I_z = sum y^2 dA, D_yz = sum y z dA, in mm^4.
struct SecondMoments {
    double I_y = 0.0;
    double I_z = 0.0;
    double D_yz = 0.0;
};

/// theta_deg is the direction (from +y, counter-clockwise) of the coordinate whose squared
/// integral is I_1. Axis 1 is perpendicular to it, axis 2 runs along it.
struct PrincipalMoments {
    double I_1 = 0.0;
    double I_2 = 0.0;
    double theta_deg = 0.0;
};

/// Unit vectors of the principal axes in the physical frame.
struct PrincipalFrame {
    Vec2 axis1;
    Vec2 axis2;
};

struct InertiaRadii {
    double i1_sq = 0.0;
    double i2_sq = 0.0;
};

/// Absent when the matching eccentricity component is zero (axis at infinity).
struct NeutralAxis {
    std::optional<double> n1_mm;
    std::optional<double> n2_mm;
};

struct Segment {
    PointPx a;
    PointPx b;
};

struct SectionProperties {
    double scale = 0.0;  // mm per pixel
    double area_mm2 = 0.0;
    PointPx centroid_geo;
    PointPx centroid_weighted;
    ShiftVector shift;
    SecondMoments moments;  // about the weighted centroid
    PrincipalMoments principal;
    InertiaRadii radii;
    double e1_mm = 0.0;
    double e2_mm = 0.0;
    std::optional<NeutralAxis> neutral_axis;  // empty for a centric load
    std::optional<Segment> axis1;             // boundary points through the weighted centroid
    std::optional<Segment> axis2;
    std::optional<Segment> eccentricity;  // along the shift direction; empty for zero shift
    int erosion_layers = 0;
};

PointPx geometric_centroid(const BinaryMask& mask);
PointPx weighted_centroid(const WeightMap& weights);

ShiftVector shift_vector(const PointPx& geo, const PointPx& weighted, double scale);

double area(const BinaryMask& mask, double scale);

/// Moments about `origin`, accumulated one peeled boundary layer at a time. `layers` receives
/// the number of erosion steps taken.
SecondMoments second_moments_erosion(const BinaryMask& mask, const PointPx& origin, double scale,
                                     int* layers = nullptr);
SecondMoments second_moments_direct(const BinaryMask& mask, const PointPx& origin, double scale);

PrincipalMoments principal_moments(double I_y, double I_z, double D_yz);
PrincipalFrame principal_frame(double theta_deg);

/// Components (e_1, e_2) of the shift vector along the principal axes.
std::pair<double, double> eccentricity_components(const ShiftVector& shift, const PrincipalFrame& frame);

InertiaRadii inertia_radii(double I_1, double I_2, double area_mm2);

/// n_1 = i2_sq / e_1, n_2 = i1_sq / e_2. Both components zero is ErrorKind::centric_load.
NeutralAxis neutral_axis_points(double i1_sq, double i2_sq, double e_1, double e_2);

/// Marches from `origin` both ways along `direction` (pixel frame, y down) in half-pixel steps
/// and returns the last mask pixel before each exit; `a` lies on the +direction side.
Segment axis_intersections(const BinaryMask& mask, const PointPx& origin, Vec2 direction);

/// Physical-frame vector to pixel frame.
inline Vec2 to_pixel_frame(Vec2 v) { return {v.x, -v.y}; }

SectionProperties compute_section_properties(const BinaryMask& mask, const WeightMap& weights, double scale);

}  // namespace frp
