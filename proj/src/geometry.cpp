#include "frp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "frp/morphology.hpp"

namespace frp {
namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

// Exact integer sums of pixel offsets from an integer anchor.
struct RawMoments {
    std::int64_t n = 0;
    std::int64_t su = 0;
    std::int64_t sv = 0;
    std::int64_t suu = 0;
    std::int64_t svv = 0;
    std::int64_t suv = 0;

    void add(std::int64_t u, std::int64_t v) {
        ++n;
        su += u;
        sv += v;
        suu += u * u;
        svv += v * v;
        suv += u * v;
    }
};

struct Anchor {
    std::int64_t x;
    std::int64_t y;
    long double dx;
    long double dy;
};

Anchor make_anchor(const PointPx& origin) {
    if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
        throw Error(ErrorKind::invalid_argument, "origin must be finite");
    }
    const auto ax = static_cast<std::int64_t>(std::llround(origin.x));
    const auto ay = static_cast<std::int64_t>(std::llround(origin.y));
    return {ax, ay, static_cast<long double>(origin.x) - ax, static_cast<long double>(origin.y) - ay};
}

void accumulate(const BinaryMask& layer, const Anchor& anchor, RawMoments& raw) {
    for (int y = 0; y < layer.height(); ++y) {
        for (int x = 0; x < layer.width(); ++x) {
            if (layer(x, y)) raw.add(x - anchor.x, y - anchor.y);
        }
    }
}

SecondMoments finalize(const RawMoments& raw, const Anchor& anchor, double scale) {
    const long double n = static_cast<long double>(raw.n);
    const long double dx = anchor.dx;
    const long double dy = anchor.dy;
    // Central sums about the true origin; columns map to +y, rows to -z.
    const long double syy = static_cast<long double>(raw.suu) - 2.0L * dx * raw.su + n * dx * dx;
    const long double szz = static_cast<long double>(raw.svv) - 2.0L * dy * raw.sv + n * dy * dy;
    const long double syz =
        static_cast<long double>(raw.suv) - dx * raw.sv - dy * raw.su + n * dx * dy;
    const long double s4 = static_cast<long double>(scale) * scale * scale * scale;
    return {static_cast<double>(szz * s4), static_cast<double>(syy * s4), static_cast<double>(-syz * s4)};
}

void require_nonempty(const BinaryMask& mask) {
    if (mask.none()) throw Error(ErrorKind::empty_mask, "mask is empty");
}

void require_scale(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::invalid_argument, "scale must be positive");
}

}  // namespace

PointPx geometric_centroid(const BinaryMask& mask) {
    require_nonempty(mask);
    const Anchor anchor{0, 0, 0.0L, 0.0L};
    RawMoments raw;
    accumulate(mask, anchor, raw);
    return {static_cast<double>(static_cast<long double>(raw.su) / raw.n),
            static_cast<double>(static_cast<long double>(raw.sv) / raw.n)};
}

PointPx weighted_centroid(const WeightMap& weights) {
    const int h = weights.height();
    const int w = weights.width();
    std::vector<long double> row_w(static_cast<std::size_t>(h), 0.0L);
    std::vector<long double> row_x(static_cast<std::size_t>(h), 0.0L);
    bool invalid = false;
#pragma omp parallel for schedule(static) reduction(|| : invalid)
    for (int y = 0; y < h; ++y) {
        long double sw = 0.0L;
        long double sx = 0.0L;
        for (int x = 0; x < w; ++x) {
            const double v = weights(x, y);
            invalid = invalid || v < 0.0 || !std::isfinite(v);
            sw += v;
            sx += static_cast<long double>(v) * x;
        }
        row_w[static_cast<std::size_t>(y)] = sw;
        row_x[static_cast<std::size_t>(y)] = sx;
    }
    if (invalid) throw Error(ErrorKind::invalid_argument, "weights must be finite and >= 0");
    long double total = 0.0L;
    long double mx = 0.0L;
    long double my = 0.0L;
    for (int y = 0; y < h; ++y) {
        total += row_w[static_cast<std::size_t>(y)];
        mx += row_x[static_cast<std::size_t>(y)];
        my += row_w[static_cast<std::size_t>(y)] * y;
    }
    if (total <= 0.0L) throw Error(ErrorKind::empty_mask, "weight map is all zero");
    return {static_cast<double>(mx / total), static_cast<double>(my / total)};
}

ShiftVector shift_vector(const PointPx& geo, const PointPx& weighted, double scale) {
    require_scale(scale);
    ShiftVector s;
    s.dx_mm = (weighted.x - geo.x) * scale;
    s.dy_mm = -(weighted.y - geo.y) * scale;
    if (s.dy_mm == 0.0) s.dy_mm = 0.0;  // drop -0
    s.magnitude_mm = std::hypot(s.dx_mm, s.dy_mm);
    if (s.magnitude_mm > 0.0) {
        s.angle_deg = std::atan2(s.dy_mm, s.dx_mm) * kDeg;
        if (s.angle_deg <= -180.0) s.angle_deg = 180.0;
    }
    return s;
}

double area(const BinaryMask& mask, double scale) {
    require_nonempty(mask);
    require_scale(scale);
    return static_cast<double>(mask.count()) * scale * scale;
}

SecondMoments second_moments_erosion(const BinaryMask& mask, const PointPx& origin, double scale, int* layers) {
    require_nonempty(mask);
    require_scale(scale);
    const Anchor anchor = make_anchor(origin);
    RawMoments raw;
    BinaryMask current = mask;
    int steps = 0;
    while (!current.none()) {
        BinaryMask inner = morph::erode_unit(current);
        // The contour is what the erosion removed.
        BinaryMask contour = current;
        for (std::size_t i = 0; i < contour.size(); ++i) {
            if (inner[i]) contour.set(i, false);
        }
        accumulate(contour, anchor, raw);
        current = std::move(inner);
        ++steps;
    }
    if (layers) *layers = steps;
    return finalize(raw, anchor, scale);
}

SecondMoments second_moments_direct(const BinaryMask& mask, const PointPx& origin, double scale) {
    require_nonempty(mask);
    require_scale(scale);
    const Anchor anchor = make_anchor(origin);
    RawMoments raw;
    accumulate(mask, anchor, raw);
    return finalize(raw, anchor, scale);
}

PrincipalMoments principal_moments(double I_y, double I_z, double D_yz) {
    if (I_y < 0.0 || I_z < 0.0) throw Error(ErrorKind::invalid_argument, "second moments must be >= 0");
    const double mean = 0.5 * (I_y + I_z);
    const double radius = 0.5 * std::hypot(I_y - I_z, 2.0 * D_yz);
    PrincipalMoments p;
    p.I_1 = mean + radius;
    p.I_2 = std::max(mean - radius, 0.0);
    p.theta_deg = 0.5 * std::atan2(2.0 * D_yz, I_z - I_y) * kDeg;
    if (p.theta_deg == 0.0) p.theta_deg = 0.0;
    return p;
}

PrincipalFrame principal_frame(double theta_deg) {
    const double t = theta_deg / kDeg;
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {{s, -c}, {c, s}};
}

std::pair<double, double> eccentricity_components(const ShiftVector& shift, const PrincipalFrame& frame) {
    const double e1 = shift.dx_mm * frame.axis1.x + shift.dy_mm * frame.axis1.y;
    const double e2 = shift.dx_mm * frame.axis2.x + shift.dy_mm * frame.axis2.y;
    return {e1, e2};
}

InertiaRadii inertia_radii(double I_1, double I_2, double area_mm2) {
    if (!(area_mm2 > 0.0)) throw Error(ErrorKind::invalid_argument, "area must be positive");
    return {I_1 / area_mm2, I_2 / area_mm2};
}

NeutralAxis neutral_axis_points(double i1_sq, double i2_sq, double e_1, double e_2) {
    if (e_1 == 0.0 && e_2 == 0.0) throw Error(ErrorKind::centric_load, "centric load has no neutral axis");
    NeutralAxis n;
    if (e_1 != 0.0) n.n1_mm = i2_sq / e_1;
    if (e_2 != 0.0) n.n2_mm = i1_sq / e_2;
    return n;
}

Segment axis_intersections(const BinaryMask& mask, const PointPx& origin, Vec2 direction) {
    const double len = std::hypot(direction.x, direction.y);
    if (!(len > 0.0) || !std::isfinite(len)) throw Error(ErrorKind::invalid_argument, "direction must be nonzero");
    const double ux = direction.x / len;
    const double uy = direction.y / len;
    const auto ox = std::llround(origin.x);
    const auto oy = std::llround(origin.y);
    if (!mask.contains(static_cast<int>(ox), static_cast<int>(oy))) {
        throw Error(ErrorKind::precondition, "origin outside mask");
    }
    const int max_steps = 2 * (mask.width() + mask.height()) + 4;
    auto march = [&](double sign) {
        PointPx last{static_cast<double>(ox), static_cast<double>(oy)};
        for (int k = 1; k <= max_steps; ++k) {
            const double t = 0.5 * k * sign;
            const auto px = std::llround(origin.x + t * ux);
            const auto py = std::llround(origin.y + t * uy);
            if (!mask.contains(static_cast<int>(px), static_cast<int>(py))) break;
            last = {static_cast<double>(px), static_cast<double>(py)};
        }
        return last;
    };
    return {march(1.0), march(-1.0)};
}

SectionProperties compute_section_properties(const BinaryMask& mask, const WeightMap& weights, double scale) {
    if (!weights.same_shape(mask.width(), mask.height())) {
        throw Error(ErrorKind::dimension_mismatch, "weight map does not match mask");
    }
    SectionProperties p;
    p.scale = scale;
    p.area_mm2 = area(mask, scale);
    p.centroid_geo = geometric_centroid(mask);
    p.centroid_weighted = weighted_centroid(weights);
    p.shift = shift_vector(p.centroid_geo, p.centroid_weighted, scale);
    p.moments = second_moments_erosion(mask, p.centroid_weighted, scale, &p.erosion_layers);
    p.principal = principal_moments(p.moments.I_y, p.moments.I_z, p.moments.D_yz);
    p.radii = inertia_radii(p.principal.I_1, p.principal.I_2, p.area_mm2);
    const PrincipalFrame frame = principal_frame(p.principal.theta_deg);
    std::tie(p.e1_mm, p.e2_mm) = eccentricity_components(p.shift, frame);
    if (p.e1_mm != 0.0 || p.e2_mm != 0.0) {
        p.neutral_axis = neutral_axis_points(p.radii.i1_sq, p.radii.i2_sq, p.e1_mm, p.e2_mm);
    }
    const PointPx& c = p.centroid_weighted;
    if (mask.contains(static_cast<int>(std::llround(c.x)), static_cast<int>(std::llround(c.y)))) {
        p.axis1 = axis_intersections(mask, c, to_pixel_frame(frame.axis1));
        p.axis2 = axis_intersections(mask, c, to_pixel_frame(frame.axis2));
        if (p.shift.magnitude_mm > 0.0) {
            p.eccentricity = axis_intersections(mask, c, to_pixel_frame({p.shift.dx_mm, p.shift.dy_mm}));
        }
    }
    return p;
}

}  // namespace frp
