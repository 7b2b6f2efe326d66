// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "frp/geometry.hpp"
#include "frp/morphology.hpp"
#include "frp/otsu.hpp"
#include "frp/report.hpp"
#include "frp/segmentation.hpp"
#include "frp/stress.hpp"
#include "frp/synthetic.hpp"
#include "oracles.hpp"

using namespace frp;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

WeightMap uniform_weights(const BinaryMask& m) {
    WeightMap w(m.width(), m.height());
    for (std::size_t i = 0; i < m.size(); ++i) w[i] = m[i] ? 1300.0 : 0.0;
    return w;
}

// Stress arithmetic against the reference rows: N, declared area, measured area, sigma_exp, sigma_C.
Outcome stress_rows() {
    struct Row {
        const char* name;
        double force, declared, measured, sigma_exp, sigma_c;
    };
    const Row rows[] = {{"straight", 68.02, 50.27, 37.45, 1353.28, 1815.94},
                        {"bent", 26.58, 50.27, 38.22, 528.71, 694.14}};
    Outcome o;
    for (const auto& r : rows) {
        const double e = rel(uniform_stress(r.force, r.declared), r.sigma_exp);
        const double c = rel(uniform_stress(r.force, r.measured), r.sigma_c);
        o.pass = o.pass && e <= 0.005 && c <= 0.005;
        o.detail += fmt("%s exp %.2f (%.3f%%) C %.2f (%.3f%%); ", r.name, uniform_stress(r.force, r.declared),
                        100 * e, uniform_stress(r.force, r.measured), 100 * c);
    }
    o.detail += "tolerance 0.5%";
    return o;
}

Outcome percentages() {
    const double straight = percent_increase(1815.94, 1862.16);
    const double bent = percent_increase(694.14, 840.59);
    const double drop = percent_reduction(1862.16, 840.59);
    Outcome o;
    o.pass = std::abs(straight - 2.55) <= 0.05 && std::abs(bent - 21.10) <= 0.05 && std::abs(drop - 54.86) <= 0.1;
    o.detail = fmt("straight %.3f%% (2.55), bent %.3f%% (21.10), E straight vs bent %.3f%% (54.86)", straight, bent,
                   drop);
    return o;
}

Outcome erosion_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> side(8, 256);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int w = side(rng), h = side(rng);
        const BinaryMask m = oracle::random_mask(rng, w, h);
        const PointPx c = geometric_centroid(m);
        const SecondMoments e = second_moments_erosion(m, c, 0.01);
        const SecondMoments d = second_moments_direct(m, c, 0.01);
        const SecondMoments n = oracle::direct_moments(m, c, 0.01);
        const double ref = e.I_y + e.I_z;
        for (double diff : {e.I_y - d.I_y, e.I_z - d.I_z, e.D_yz - d.D_yz, e.I_y - n.I_y, e.I_z - n.I_z,
                            e.D_yz - n.D_yz}) {
            worst = std::max(worst, std::abs(diff) / ref);
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 30.0,
            fmt("200 masks up to 256x256, worst relative diff %.2e (limit 1e-9), %.1f s (limit 30 s)", worst, secs)};
}

Outcome analytic_shapes() {
    const double s = 0.01, s4 = std::pow(s, 4);
    Outcome o;
    {
        SyntheticSpec spec;
        spec.shape = DiscShape{100};
        const BinaryMask m = shape_mask(spec, 230, 230);
        const SectionProperties p = compute_section_properties(m, uniform_weights(m), s);
        const double ref_i = kPi * std::pow(100.0, 4) / 4.0 * s4;
        const double ea = rel(p.area_mm2, kPi * 1e4 * s * s);
        const double e1 = rel(p.principal.I_1, ref_i), e2 = rel(p.principal.I_2, ref_i);
        const double shift_px = p.shift.magnitude_mm / s;
        o.pass = ea <= 0.01 && e1 <= 0.02 && e2 <= 0.02 && shift_px < 0.5;
        o.detail = fmt("disc area %.3f%%, I_1 %.3f%%, I_2 %.3f%%, shift %.2e px; ", 100 * ea, 100 * e1, 100 * e2,
                       shift_px);
    }
    const double a = 100, b = 50;
    const double big = kPi * a * a * a * b / 4.0 * s4, small = kPi * a * b * b * b / 4.0 * s4;
    double lo1 = 1e300, hi1 = 0, lo2 = 1e300, hi2 = 0, worst = 0, trace = 0;
    for (double rot : {0.0, 15.0, 30.0, 45.0}) {
        SyntheticSpec spec;
        spec.shape = EllipseShape{a, b, rot};
        const BinaryMask m = shape_mask(spec, 230, 230);
        const SectionProperties p = compute_section_properties(m, uniform_weights(m), s);
        const PrincipalMoments& pm = p.principal;
        worst = std::max({worst, rel(pm.I_1, big), rel(pm.I_2, small)});
        lo1 = std::min(lo1, pm.I_1), hi1 = std::max(hi1, pm.I_1);
        lo2 = std::min(lo2, pm.I_2), hi2 = std::max(hi2, pm.I_2);
        trace = std::max(trace, rel(pm.I_1 + pm.I_2, p.moments.I_y + p.moments.I_z));
    }
    const double spread = std::max((hi1 - lo1) / lo1, (hi2 - lo2) / lo2);
    o.pass = o.pass && worst <= 0.02 && spread <= 0.02 && trace <= 1e-9;
    o.detail += fmt("ellipse 100x50 at 0/15/30/45 deg: worst closed-form error %.3f%%, rotation spread %.3f%%, "
                    "trace mismatch %.1e",
                    100 * worst, 100 * spread, trace);
    return o;
}

Outcome half_density_disc() {
    Outcome o;
    double worst_mag = 0, worst_ang = 0;
    for (double split : {0.0, 37.0, 90.0, -160.0}) {
        SyntheticSpec spec;
        spec.shape = HalfDensityDiscShape{100, split};
        spec.noise = 8;
        const SyntheticImage img = generate_synthetic(spec, 260, 260, 0.01);
        const SectionReport r = analyze(img.image, AnalysisConfig{});
        const ShiftVector& sv = r.properties.shift;
        worst_mag = std::max(worst_mag, rel(sv.magnitude_mm, img.truth.shift_mm));
        worst_ang = std::max(worst_ang, std::abs(std::remainder(sv.angle_deg - split, 360.0)));
    }
    o.pass = worst_mag <= 0.02 && worst_ang <= 1.0;
    o.detail = fmt("full pipeline, splits 0/37/90/-160 deg: worst magnitude error %.3f%% (limit 2%%), "
                   "worst direction error %.3f deg (limit 1)",
                   100 * worst_mag, worst_ang);
    return o;
}

Outcome morphology_and_otsu() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> radius(1, 4);
    int broken = 0;
    auto le = [](const Gray8& x, const Gray8& y) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > y[i]) return false;
        return true;
    };
    for (int k = 0; k < 100; ++k) {
        const Gray8 f = oracle::random_gray(rng, 64, 64, k % 2 ? 256 : 4);
        const morph::DiskKernel b(radius(rng));
        const Gray8 er = morph::erode(f, b), di = morph::dilate(f, b);
        const Gray8 op = morph::morph_apply(f, morph::MorphOp::open, b);
        const Gray8 cl = morph::morph_apply(f, morph::MorphOp::close, b);
        const bool ok = er == morph::invert(morph::dilate(morph::invert(f), b)) &&
                        op == morph::invert(morph::morph_apply(morph::invert(f), morph::MorphOp::close, b)) &&
                        morph::morph_apply(op, morph::MorphOp::open, b) == op &&
                        morph::morph_apply(cl, morph::MorphOp::close, b) == cl && le(op, f) && le(f, cl) &&
                        le(er, f) && le(f, di);
        broken += ok ? 0 : 1;
    }
    int otsu_mismatch = 0;
    std::uniform_int_distribution<int> bins(2, 64), pos(0, 255), cnt(1, 5000);
    for (int k = 0; k < 100; ++k) {
        Histogram h{};
        while (distinct_levels(h) < 2) {
            const int n = bins(rng);
            for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(pos(rng))] += static_cast<std::uint64_t>(cnt(rng));
        }
        otsu_mismatch += multi_otsu(h, 2).levels[0] == oracle::otsu2(h) ? 0 : 1;
    }
    const double secs = seconds_since(t0);
    return {broken == 0 && otsu_mismatch == 0 && secs < 30.0,
            fmt("100 rasters 64x64: %d law violations; 100 histograms: %d threshold mismatches vs sweep; %.1f s", broken,
                otsu_mismatch, secs)};
}

Outcome segmentation_quality() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const AnalysisConfig config;
    double worst_j = 1.0;
    int kept_in_rough = 0, total_sats = 0, removed = 0;
    for (int k = 0; k < 50; ++k) {
        SyntheticSpec spec;
        const double r = 75 + 25 * u(rng);
        spec.shape = DiscShape{r};
        spec.noise = static_cast<int>(20 * u(rng));
        spec.seed = 1000 + static_cast<std::uint64_t>(k);
        const PointPx c{129.5 + 8 * (u(rng) - 0.5), 129.5 + 8 * (u(rng) - 0.5)};
        spec.centre = c;
        const int n_sat = 1 + k % 4;
        for (int i = 0; i < n_sat; ++i) {
            // Side fibres hug the boundary: centre just outside, body overlapping the section.
            const double rs = 4 + 4 * u(rng);
            const double ang = 2 * kPi * (i + u(rng) * 0.8) / n_sat;
            const double d = r + 1 + (rs - 2) * u(rng);
            spec.satellites.push_back({c.x + d * std::cos(ang), c.y - d * std::sin(ang), rs});
        }
        const SyntheticImage img = generate_synthetic(spec, 260, 260, 0.01);
        const BinaryMask truth = shape_mask(spec, 260, 260);
        const BinaryMask rough = rough_segment(img.image, config.segmentation);
        const BinaryMask fine = fine_segment(img.image, rough, config.segmentation);
        worst_j = std::min(worst_j, oracle::jaccard(fine, truth));
        for (const auto& s : spec.satellites) {
            ++total_sats;
            const int sx = static_cast<int>(std::lround(s.cx)), sy = static_cast<int>(std::lround(s.cy));
            kept_in_rough += rough.contains(sx, sy) ? 1 : 0;
            // Removed: no fine pixel of the satellite body lies more than 2.5 px outside the section.
            // A disk-15 opening still reaches about 1.8 px into an r=8 bump where it meets the
            // section; half a pixel diagonal covers rasterisation.
            bool leftover = false;
            for (int y = sy - 9; y <= sy + 9; ++y)
                for (int x = sx - 9; x <= sx + 9; ++x) {
                    const double dx = x - s.cx, dy = y - s.cy;
                    if (dx * dx + dy * dy > s.radius * s.radius || !fine.contains(x, y)) continue;
                    if (std::hypot(x - c.x, y - c.y) > r + 2.5) leftover = true;
                }
            removed += leftover ? 0 : 1;
        }
    }
    return {worst_j >= 0.98 && kept_in_rough == total_sats && removed == total_sats,
            fmt("50 fixtures: worst Jaccard %.4f (limit 0.98); satellites in rough mask %d/%d, removed by fine stage "
                "%d/%d",
                worst_j, kept_in_rough, total_sats, removed, total_sats)};
}

Outcome determinism() {
    std::vector<BatchInput> inputs;
    for (int k = 0; k < 10; ++k) {
        SyntheticSpec spec;
        if (k % 3 == 0) spec.shape = DiscShape{60.0 + 3 * k};
        if (k % 3 == 1) spec.shape = EllipseShape{80, 45, 12.0 * k};
        if (k % 3 == 2) spec.shape = HalfDensityDiscShape{70, 33.0 * k};
        spec.noise = 5 + k;
        spec.seed = static_cast<std::uint64_t>(k);
        inputs.push_back({"fixture" + std::to_string(k), generate_synthetic(spec, 200, 200, 0.01).image});
    }
    int mismatches = 0;
    for (WeightMode mode : {WeightMode::global, WeightMode::local}) {
        AnalysisConfig c;
        c.weight_mode = mode;
        c.segmentation.rough_radius = 20;
        c.force_kN = 10.0;
        c.diameter_mm = 1.5;
        omp_set_num_threads(1);
        std::vector<std::string> first, second;
        for (const auto& in : inputs) first.push_back(emit_json(analyze(in.image, c, in.sample_id)));
        for (const auto& in : inputs) second.push_back(emit_json(analyze(in.image, c, in.sample_id)));
        omp_set_num_threads(4);
        const auto batch = analyze_batch(inputs, c);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            mismatches += first[i] == second[i] ? 0 : 1;
            mismatches += batch[i].report && emit_json(*batch[i].report) == first[i] ? 0 : 1;
        }
    }
    return {mismatches == 0,
            fmt("10 fixtures x global/local: %d mismatches across repeat runs and 4-thread batch vs 1-thread "
                "sequential",
                mismatches)};
}

template <typename F>
void run(int id, const char* title, F f) {
    try {
        report(id, title, f());
    } catch (const std::exception& e) {
        report(id, title, {false, std::string("threw: ") + e.what()});
    }
}

}  // namespace

int main() {
    run(1, "uniform stress vs reference rows", stress_rows);
    run(2, "stress increase percentages", percentages);
    std::printf("SKIP [3] measured shift vectors, areas and moments of real sections: no micrographs available; "
                "covered by the synthetic criteria below\n");
    run(4, "erosion-layer vs direct second moments", erosion_equivalence);
    run(5, "analytic disc and ellipse", analytic_shapes);
    run(6, "half-density disc weighted centroid", half_density_disc);
    run(7, "morphology laws and two-class Otsu", morphology_and_otsu);
    run(8, "segmentation quality with side fibres", segmentation_quality);
    run(9, "determinism", determinism);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
