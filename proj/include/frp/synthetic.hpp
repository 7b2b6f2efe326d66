#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "frp/types.hpp"

namespace frp {

struct DiscShape {
    double radius = 100.0;  // px
};

struct EllipseShape {
    double a = 100.0;  // semi-axis along the rotated horizontal, px
    double b = 50.0;
    double rotation_deg = 0.0;  // counter-clockwise, y up
};

/// Disc with fibre intensity on the half whose outward normal points at split_deg.
struct HalfDensityDiscShape {
    double radius = 100.0;
    double split_deg = 0.0;
};

using SyntheticShape = std::variant<DiscShape, EllipseShape, HalfDensityDiscShape>;

struct Intensities {
    std::uint8_t background = 20;
    std::uint8_t epoxy = 140;
    std::uint8_t fibre = 200;
};

/// Small bright blob drawn at fibre intensity, imitating a detached side fibre.
struct Satellite {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 5.0;
};

struct SyntheticSpec {
    SyntheticShape shape = DiscShape{};
    Intensities levels;
    int noise = 0;  // additive uniform amplitude, in grey levels
    std::uint64_t seed = 1;
    std::optional<PointPx> centre;  // defaults to the image centre
    std::vector<Satellite> satellites;
    // Disc and ellipse interiors carry a fibre-dot lattice of this pitch (0 = plain epoxy).
    int lattice_pitch = 4;
    double fibre_density = 2600.0;  // kg/m^3, used for the weighted ground truth
    double epoxy_density = 1300.0;
};

/// Closed-form quantities for the requested shape.
struct GroundTruth {
    double area_mm2 = 0.0;
    PointPx centroid_geometric;
    PointPx centroid_weighted;  // half-density disc only differs from the geometric one
    double shift_mm = 0.0;
    double shift_angle_deg = 0.0;
    double I_1_mm4 = 0.0;  // principal moments about the weighted centroid
    double I_2_mm4 = 0.0;
};

struct SyntheticImage {
    CalibratedImage image;
    GroundTruth truth;
};

SyntheticImage generate_synthetic(const SyntheticSpec& spec, int width, int height, double scale);

/// Exact rasterized support of the main shape (no satellites), pixel-centre sampling.
BinaryMask shape_mask(const SyntheticSpec& spec, int width, int height);

}  // namespace frp
