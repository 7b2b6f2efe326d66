#include "frp/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace frp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr double kMargin = 2.0;

PointPx centre_of(const SyntheticSpec& spec, int width, int height) {
    if (spec.centre) return *spec.centre;
    return {(width - 1) / 2.0, (height - 1) / 2.0};
}

// Half extents of the axis-aligned bounding box of the main shape.
Vec2 half_extent(const SyntheticShape& shape) {
    return std::visit(
        [](const auto& s) -> Vec2 {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, EllipseShape>) {
                const double c = std::cos(s.rotation_deg * kDeg);
                const double n = std::sin(s.rotation_deg * kDeg);
                return {std::hypot(s.a * c, s.b * n), std::hypot(s.a * n, s.b * c)};
            } else {
                return {s.radius, s.radius};
            }
        },
        shape);
}

// Offsets are Cartesian (y up) from the shape centre.
bool inside_shape(const SyntheticShape& shape, double dx, double dy) {
    return std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, EllipseShape>) {
                const double c = std::cos(s.rotation_deg * kDeg);
                const double n = std::sin(s.rotation_deg * kDeg);
                const double u = (dx * c + dy * n) / s.a;
                const double v = (-dx * n + dy * c) / s.b;
                return u * u + v * v <= 1.0;
            } else {
                return dx * dx + dy * dy <= s.radius * s.radius;
            }
        },
        shape);
}

void validate(const SyntheticSpec& spec) {
    const auto& lv = spec.levels;
    if (!(lv.fibre > lv.epoxy && lv.epoxy > lv.background)) {
        throw Error(ErrorKind::invalid_argument, "intensities must satisfy fibre > epoxy > background");
    }
    if (!(spec.fibre_density > spec.epoxy_density && spec.epoxy_density > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "densities must satisfy fibre > epoxy > 0");
    }
    if (spec.noise < 0 || spec.lattice_pitch < 0 || spec.lattice_pitch == 1) {
        throw Error(ErrorKind::invalid_argument, "noise must be >= 0 and lattice pitch 0 or >= 2");
    }
    const bool positive = std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, EllipseShape>) {
                return s.a > 0.0 && s.b > 0.0;
            } else {
                return s.radius > 0.0;
            }
        },
        spec.shape);
    if (!positive) throw Error(ErrorKind::invalid_argument, "shape dimensions must be positive");
}

// Fibre dots of size pitch/2 on a lattice mirrored about the centre, so the texture is symmetric.
bool lattice_fibre(int pitch, double dx, double dy) {
    if (pitch == 0) return false;
    const auto ix = static_cast<long>(std::floor(std::abs(dx)));
    const auto iy = static_cast<long>(std::floor(std::abs(dy)));
    return ix % pitch < pitch / 2 && iy % pitch < pitch / 2;
}

GroundTruth compute_truth(const SyntheticSpec& spec, PointPx centre, double scale) {
    GroundTruth t;
    t.centroid_geometric = centre;
    t.centroid_weighted = centre;
    const double s4 = std::pow(scale, 4);
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, EllipseShape>) {
                t.area_mm2 = kPi * s.a * s.b * scale * scale;
                const double major = std::max(s.a, s.b);
                const double minor = std::min(s.a, s.b);
                t.I_1_mm4 = kPi * major * major * major * minor / 4.0 * s4;
                t.I_2_mm4 = kPi * major * minor * minor * minor / 4.0 * s4;
            } else {
                const double r = s.radius;
                const double area_px = kPi * r * r;
                t.area_mm2 = area_px * scale * scale;
                t.I_1_mm4 = kPi * std::pow(r, 4) / 4.0 * s4;
                t.I_2_mm4 = t.I_1_mm4;
                if constexpr (std::is_same_v<S, HalfDensityDiscShape>) {
                    // Each half has its centroid 4r/(3 pi) from the centre; mass-weight the two.
                    const double rf = spec.fibre_density;
                    const double re = spec.epoxy_density;
                    const double d = 4.0 * (rf - re) * r / (3.0 * kPi * (rf + re));
                    const double ang = s.split_deg * kDeg;
                    t.centroid_weighted = {centre.x + d * std::cos(ang), centre.y - d * std::sin(ang)};
                    t.shift_mm = d * scale;
                    t.shift_angle_deg = std::remainder(s.split_deg, 360.0);
                    if (t.shift_angle_deg == -180.0) t.shift_angle_deg = 180.0;
                    // Parallel-axis shift to the weighted centroid raises the moment across the shift.
                    t.I_1_mm4 += area_px * d * d * s4;
                }
            }
        },
        spec.shape);
    return t;
}

}  // namespace

BinaryMask shape_mask(const SyntheticSpec& spec, int width, int height) {
    const PointPx c = centre_of(spec, width, height);
    BinaryMask mask(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            mask.set(x, y, inside_shape(spec.shape, x - c.x, c.y - y));
        }
    }
    return mask;
}

SyntheticImage generate_synthetic(const SyntheticSpec& spec, int width, int height, double scale) {
    validate(spec);
    if (width < 1 || height < 1 || !(scale > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "image size and scale must be positive");
    }
    const PointPx c = centre_of(spec, width, height);
    const Vec2 ext = half_extent(spec.shape);
    if (c.x - ext.x < kMargin || c.y - ext.y < kMargin || c.x + ext.x > width - 1 - kMargin ||
        c.y + ext.y > height - 1 - kMargin) {
        throw Error(ErrorKind::out_of_bounds, "shape exceeds bounds");
    }

    const auto& lv = spec.levels;
    Gray8 pixels(width, height, lv.background);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - c.x;
            const double dy = c.y - y;
            if (!inside_shape(spec.shape, dx, dy)) continue;
            bool fibre = false;
            if (const auto* half = std::get_if<HalfDensityDiscShape>(&spec.shape)) {
                const double a = half->split_deg * kDeg;
                fibre = dx * std::cos(a) + dy * std::sin(a) > 0.0;
            } else {
                fibre = lattice_fibre(spec.lattice_pitch, dx, dy);
            }
            pixels(x, y) = fibre ? lv.fibre : lv.epoxy;
        }
    }
    for (const auto& sat : spec.satellites) {
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const double dx = x - sat.cx;
                const double dy = y - sat.cy;
                if (dx * dx + dy * dy <= sat.radius * sat.radius) pixels(x, y) = lv.fibre;
            }
        }
    }
    if (spec.noise > 0) {
        std::mt19937_64 rng(spec.seed);
        std::uniform_int_distribution<int> dist(-spec.noise, spec.noise);
        for (auto& v : pixels.pixels()) v = static_cast<std::uint8_t>(std::clamp(v + dist(rng), 0, 255));
    }
    return {CalibratedImage(std::move(pixels), scale), compute_truth(spec, c, scale)};
}

}  // namespace frp
