#include "frp/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace frp {
namespace {

using nlohmann::ordered_json;

// Round to the 6 significant digits the report promises.
double sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

ordered_json point_json(const PointPx& p) { return ordered_json{{"x", sig6(p.x)}, {"y", sig6(p.y)}}; }

ordered_json segment_json(const Segment& s) { return ordered_json::array({point_json(s.a), point_json(s.b)}); }

const char* mode_name(WeightMode m) { return m == WeightMode::global ? "global" : "local"; }

using Colour = std::array<std::uint8_t, 3>;
constexpr Colour kRed{255, 0, 0};
constexpr Colour kBlue{0, 0, 255};
constexpr Colour kGreen{0, 200, 0};
constexpr Colour kYellow{255, 255, 0};
constexpr Colour kCyan{0, 255, 255};
constexpr Colour kMagenta{255, 0, 255};

void plot(Rgb8& img, int x, int y, Colour c) {
    if (img.in_bounds(x, y)) img(x, y) = c;
}

void draw_line(Rgb8& img, PointPx a, PointPx b, Colour c) {
    int x0 = static_cast<int>(std::lround(a.x));
    int y0 = static_cast<int>(std::lround(a.y));
    const int x1 = static_cast<int>(std::lround(b.x));
    const int y1 = static_cast<int>(std::lround(b.y));
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        plot(img, x0, y0, c);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void draw_cross(Rgb8& img, PointPx p, int arm, Colour c) {
    draw_line(img, {p.x - arm, p.y}, {p.x + arm, p.y}, c);
    draw_line(img, {p.x, p.y - arm}, {p.x, p.y + arm}, c);
}

void draw_box(Rgb8& img, PointPx p, int half, Colour c) {
    const int cx = static_cast<int>(std::lround(p.x));
    const int cy = static_cast<int>(std::lround(p.y));
    for (int y = cy - half; y <= cy + half; ++y) {
        for (int x = cx - half; x <= cx + half; ++x) plot(img, x, y, c);
    }
}

}  // namespace

void AnalysisConfig::validate() const {
    segmentation.validate();
    densities.validate();
    if (window < 3 || window % 2 == 0) throw Error(ErrorKind::invalid_argument, "window must be odd and >= 3");
    if (scale_override && !(*scale_override > 0.0)) throw Error(ErrorKind::invalid_argument, "scale must be positive");
    if (force_kN && !(*force_kN >= 0.0)) throw Error(ErrorKind::invalid_argument, "force must be >= 0");
    if (diameter_mm && !(*diameter_mm > 0.0)) throw Error(ErrorKind::invalid_argument, "diameter must be positive");
}

std::optional<double> AnalysisConfig::declared_area_mm2() const {
    if (!diameter_mm) return std::nullopt;
    return declared_area(*diameter_mm);
}

SectionReport analyze(const CalibratedImage& image, const AnalysisConfig& config, std::string sample_id) {
    config.validate();
    SectionReport r;
    r.sample_id = std::move(sample_id);
    r.config = config;
    r.width = image.width();
    r.height = image.height();
    r.scale = image.scale();

    const BinaryMask rough = rough_segment(image, config.segmentation);
    const BinaryMask mask = fine_segment(image, rough, config.segmentation);
    const CalibratedImage roi = apply_mask(image, mask);
    r.area_px = mask.count();
    r.touches_border = touches_border(mask);
    r.void_fraction = void_fraction(mask);

    WeightMap weights;
    if (config.weight_mode == WeightMode::global) {
        r.fibre_threshold = global_fibre_threshold(roi, mask);
        weights = assign_global(roi, mask, config.densities, r.fibre_threshold);
    } else {
        weights = assign_local(roi, mask, config.densities, config.window);
    }
    r.zero_weight_fraction = zero_weight_fraction(weights, mask);
    r.properties = compute_section_properties(mask, weights, image.scale());

    if (r.touches_border) {
        r.shift_reliable = false;
        r.warnings.emplace_back(kTruncatedWarning);
    }
    if (!r.properties.axis1) r.warnings.emplace_back("weighted centroid outside section");

    if (config.force_kN) {
        SectionProperties props = r.properties;
        // A truncated section has no trustworthy shift, so only centric stresses are reported.
        if (!r.shift_reliable) props.eccentricity.reset();
        r.stress = critical_point_stresses(props, *config.force_kN, config.declared_area_mm2());
    }
    return r;
}

std::vector<BatchResult> analyze_batch(const std::vector<BatchInput>& inputs, const AnalysisConfig& config) {
    std::vector<BatchResult> out(inputs.size());
    const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& slot = out[static_cast<std::size_t>(i)];
        const auto& in = inputs[static_cast<std::size_t>(i)];
        try {
            slot.report = analyze(in.image, config, in.sample_id);
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    }
    return out;
}

ordered_json config_to_json(const AnalysisConfig& c) {
    ordered_json j;
    j["segmentation"] = {{"rough_radius", c.segmentation.rough_radius},
                         {"fine_close_radius", c.segmentation.fine_close_radius},
                         {"fine_open_radius", c.segmentation.fine_open_radius},
                         {"otsu_classes", c.segmentation.otsu_classes},
                         {"keep_largest_component", c.segmentation.keep_largest_component}};
    j["densities"] = {{"fibre", c.densities.fibre}, {"epoxy", c.densities.epoxy}};
    j["weight_mode"] = mode_name(c.weight_mode);
    j["window"] = c.window;
    j["scale_override"] = c.scale_override ? ordered_json(*c.scale_override) : ordered_json(nullptr);
    j["force_kN"] = c.force_kN ? ordered_json(*c.force_kN) : ordered_json(nullptr);
    j["diameter_mm"] = c.diameter_mm ? ordered_json(*c.diameter_mm) : ordered_json(nullptr);
    return j;
}

AnalysisConfig config_from_json(const nlohmann::json& j) {
    AnalysisConfig c;
    try {
        if (j.contains("segmentation")) {
            const auto& s = j.at("segmentation");
            c.segmentation.rough_radius = s.value("rough_radius", c.segmentation.rough_radius);
            c.segmentation.fine_close_radius = s.value("fine_close_radius", c.segmentation.fine_close_radius);
            c.segmentation.fine_open_radius = s.value("fine_open_radius", c.segmentation.fine_open_radius);
            c.segmentation.otsu_classes = s.value("otsu_classes", c.segmentation.otsu_classes);
            c.segmentation.keep_largest_component =
                s.value("keep_largest_component", c.segmentation.keep_largest_component);
        }
        if (j.contains("densities")) {
            c.densities.fibre = j.at("densities").value("fibre", c.densities.fibre);
            c.densities.epoxy = j.at("densities").value("epoxy", c.densities.epoxy);
        }
        if (j.contains("weight_mode")) {
            const auto mode = j.at("weight_mode").get<std::string>();
            if (mode == "global") {
                c.weight_mode = WeightMode::global;
            } else if (mode == "local") {
                c.weight_mode = WeightMode::local;
            } else {
                throw Error(ErrorKind::invalid_argument, "weight_mode must be global or local");
            }
        }
        c.window = j.value("window", c.window);
        auto opt = [&](const char* key, std::optional<double>& dst) {
            if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<double>();
        };
        opt("scale_override", c.scale_override);
        opt("force_kN", c.force_kN);
        opt("diameter_mm", c.diameter_mm);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::invalid_argument, std::string("bad config: ") + e.what());
    }
    c.validate();
    return c;
}

ordered_json report_to_json(const SectionReport& r) {
    const SectionProperties& p = r.properties;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["sample_id"] = r.sample_id;
    j["config"] = config_to_json(r.config);
    j["image"] = {{"width", r.width}, {"height", r.height}, {"scale_mm_per_px", r.scale}};
    j["segmentation"] = {{"area_px", r.area_px},
                         {"touches_border", r.touches_border},
                         {"void_fraction", sig6(r.void_fraction)}};

    ordered_json w;
    w["mode"] = mode_name(r.config.weight_mode);
    if (r.fibre_threshold) w["fibre_threshold"] = *r.fibre_threshold;
    w["zero_weight_fraction"] = sig6(r.zero_weight_fraction);
    j["weights"] = w;

    ordered_json g;
    g["area_mm2"] = sig6(p.area_mm2);
    g["centroid_geometric_px"] = point_json(p.centroid_geo);
    g["centroid_weighted_px"] = point_json(p.centroid_weighted);
    g["shift"] = {{"dx_mm", sig6(p.shift.dx_mm)},
                  {"dy_mm", sig6(p.shift.dy_mm)},
                  {"magnitude_mm", sig6(p.shift.magnitude_mm)},
                  {"angle_deg", sig6(p.shift.angle_deg)},
                  {"reliable", r.shift_reliable}};
    g["I_y_mm4"] = sig6(p.moments.I_y);
    g["I_z_mm4"] = sig6(p.moments.I_z);
    g["D_yz_mm4"] = sig6(p.moments.D_yz);
    g["I_1_mm4"] = sig6(p.principal.I_1);
    g["I_2_mm4"] = sig6(p.principal.I_2);
    g["theta_deg"] = sig6(p.principal.theta_deg);
    g["i1_sq_mm2"] = sig6(p.radii.i1_sq);
    g["i2_sq_mm2"] = sig6(p.radii.i2_sq);
    g["e1_mm"] = sig6(p.e1_mm);
    g["e2_mm"] = sig6(p.e2_mm);
    if (p.neutral_axis) {
        ordered_json n = ordered_json::object();
        if (p.neutral_axis->n1_mm) n["n1_mm"] = sig6(*p.neutral_axis->n1_mm);
        if (p.neutral_axis->n2_mm) n["n2_mm"] = sig6(*p.neutral_axis->n2_mm);
        g["neutral_axis"] = n;
    }
    g["erosion_layers"] = p.erosion_layers;
    ordered_json inter = ordered_json::object();
    if (p.axis1) inter["axis1"] = segment_json(*p.axis1);
    if (p.axis2) inter["axis2"] = segment_json(*p.axis2);
    if (p.eccentricity) inter["eccentricity"] = segment_json(*p.eccentricity);
    g["intersections_px"] = inter;
    j["geometry"] = g;

    if (r.stress) {
        const StressReport& s = *r.stress;
        ordered_json st;
        st["force_kN"] = s.force_kN;
        if (s.sigma_exp) st["sigma_exp_MPa"] = sig6(*s.sigma_exp);
        st["sigma_C_MPa"] = sig6(s.sigma_C);
        st["moment_kNmm"] = sig6(s.moment_kNmm);
        if (s.sigma_A) st["sigma_A_MPa"] = sig6(*s.sigma_A);
        if (s.sigma_E) st["sigma_E_MPa"] = sig6(*s.sigma_E);
        if (s.increase_pct_E) st["increase_pct_E"] = sig6(*s.increase_pct_E);
        if (s.point_A) st["point_A_px"] = point_json(*s.point_A);
        if (s.point_E) st["point_E_px"] = point_json(*s.point_E);
        j["stress"] = st;
    }
    j["warnings"] = r.warnings;
    return j;
}

std::string emit_json(const SectionReport& report) { return report_to_json(report).dump(2) + "\n"; }

Rgb8 render_overlay(const CalibratedImage& image, const SectionReport& report) {
    const Gray8& g = image.pixels();
    if (!g.same_shape(report.width, report.height)) {
        throw Error(ErrorKind::dimension_mismatch, "report does not belong to this image");
    }
    Rgb8 out(g.width(), g.height());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = {g[i], g[i], g[i]};

    const SectionProperties& p = report.properties;
    const PointPx& geo = p.centroid_geo;
    draw_line(out, {0, geo.y}, {static_cast<double>(g.width() - 1), geo.y}, kRed);
    draw_line(out, {geo.x, 0}, {geo.x, static_cast<double>(g.height() - 1)}, kRed);
    if (p.axis1) draw_line(out, p.axis1->a, p.axis1->b, kGreen);
    if (p.axis2) draw_line(out, p.axis2->a, p.axis2->b, kGreen);
    if (p.eccentricity) {
        draw_line(out, p.eccentricity->a, p.eccentricity->b, kYellow);
        if (report.stress && report.stress->point_E) {
            draw_box(out, *report.stress->point_A, 2, kCyan);
            draw_box(out, *report.stress->point_E, 2, kMagenta);
        } else {
            draw_box(out, p.eccentricity->a, 2, kYellow);
            draw_box(out, p.eccentricity->b, 2, kYellow);
        }
    }
    draw_cross(out, geo, 4, kRed);
    draw_cross(out, p.centroid_weighted, 4, kBlue);
    return out;
}

}  // namespace frp
