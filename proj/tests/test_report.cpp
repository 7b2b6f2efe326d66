#include <gtest/gtest.h>

#include <cmath>

#include "frp/report.hpp"
#include "frp/synthetic.hpp"

using namespace frp;
using nlohmann::json;

namespace {

CalibratedImage fixture(SyntheticShape shape, int noise = 6, std::optional<PointPx> centre = std::nullopt) {
    SyntheticSpec s;
    s.shape = shape;
    s.noise = noise;
    s.seed = 9;
    s.centre = centre;
    return generate_synthetic(s, 240, 240, 0.01).image;
}

AnalysisConfig small_config() {
    AnalysisConfig c;
    c.segmentation.rough_radius = 12;
    c.segmentation.fine_close_radius = 5;
    c.segmentation.fine_open_radius = 8;
    return c;
}

}  // namespace

TEST(Report, ConfigValidation) {
    AnalysisConfig c;
    EXPECT_NO_THROW(c.validate());
    c.window = 6;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.force_kN = -1;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.diameter_mm = 8.0;
    EXPECT_NEAR(*c.declared_area_mm2(), 50.265, 1e-3);
}

TEST(Report, ConfigJsonRoundTrip) {
    AnalysisConfig c = small_config();
    c.weight_mode = WeightMode::local;
    c.window = 9;
    c.densities = {2550.5, 1210.25};
    c.force_kN = 68.02;
    c.scale_override = 0.0037;
    const json j = json::parse(config_to_json(c).dump());
    const AnalysisConfig back = config_from_json(j);
    EXPECT_EQ(back.segmentation, c.segmentation);
    EXPECT_EQ(back.densities, c.densities);
    EXPECT_EQ(back.weight_mode, c.weight_mode);
    EXPECT_EQ(back.window, 9);
    EXPECT_EQ(back.force_kN, c.force_kN);
    EXPECT_EQ(back.scale_override, c.scale_override);
    EXPECT_FALSE(back.diameter_mm);
    EXPECT_THROW(config_from_json(json{{"weight_mode", "fuzzy"}}), Error);
    EXPECT_THROW(config_from_json(json{{"window", "seven"}}), Error);
}

TEST(Report, UniformDisc) {
    const SectionReport r = analyze(fixture(DiscShape{90}), small_config(), "disc");
    EXPECT_LT(r.properties.shift.magnitude_mm, 0.5 * 0.01);
    EXPECT_LT(std::abs(r.properties.principal.I_1 - r.properties.principal.I_2) / r.properties.principal.I_1, 0.02);
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_TRUE(r.shift_reliable);
    EXPECT_DOUBLE_EQ(r.zero_weight_fraction, 0.0);
    EXPECT_FALSE(r.stress);
}

TEST(Report, HalfDensityDiscShift) {
    SyntheticSpec s;
    s.shape = HalfDensityDiscShape{90, 45};
    const SyntheticImage img = generate_synthetic(s, 240, 240, 0.01);
    const SectionReport r = analyze(img.image, small_config());
    EXPECT_LT(std::abs(r.properties.shift.magnitude_mm - img.truth.shift_mm) / img.truth.shift_mm, 0.02);
    EXPECT_NEAR(r.properties.shift.angle_deg, 45.0, 1.0);
}

TEST(Report, TruncatedSectionWarns) {
    AnalysisConfig c = small_config();
    c.force_kN = 10.0;
    const CalibratedImage img = fixture(DiscShape{60}, 0, PointPx{62.5, 120});
    // Shift the bright disc against the left border by cropping columns.
    Gray8 cropped(200, 240);
    for (int y = 0; y < 240; ++y)
        for (int x = 0; x < 200; ++x) cropped(x, y) = img.pixels()(x + 10, y);
    const SectionReport r = analyze(CalibratedImage(cropped, 0.01), c);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(r.warnings[0], "section truncated");
    EXPECT_FALSE(r.shift_reliable);
    ASSERT_TRUE(r.stress);
    EXPECT_FALSE(r.stress->sigma_E);
    const json j = json::parse(emit_json(r));
    EXPECT_FALSE(j["geometry"]["shift"]["reliable"].get<bool>());
}

TEST(Report, JsonShapeAndDeterminism) {
    AnalysisConfig c = small_config();
    const CalibratedImage img = fixture(HalfDensityDiscShape{80, -30});
    const SectionReport a = analyze(img, c, "s1");
    const std::string text = emit_json(a);
    EXPECT_EQ(text, emit_json(analyze(img, c, "s1")));
    const json j = json::parse(text);
    EXPECT_EQ(j["schema_version"], kSchemaVersion);
    EXPECT_FALSE(j.contains("stress"));
    EXPECT_EQ(nlohmann::ordered_json::parse(text).begin().key(), "schema_version");
    // Printed values parse back to the report rounded to 6 significant digits.
    const double mag = j["geometry"]["shift"]["magnitude_mm"];
    EXPECT_NEAR(mag, a.properties.shift.magnitude_mm, 5e-6 * a.properties.shift.magnitude_mm);
    const double i1 = j["geometry"]["I_1_mm4"];
    EXPECT_NEAR(i1, a.properties.principal.I_1, 5e-6 * a.properties.principal.I_1);

    c.force_kN = 1.0;
    c.diameter_mm = 1.6;
    const json k = json::parse(emit_json(analyze(img, c, "s1")));
    ASSERT_TRUE(k.contains("stress"));
    EXPECT_GT(k["stress"]["increase_pct_E"].get<double>(), 0.0);
    EXPECT_TRUE(k["stress"].contains("sigma_exp_MPa"));
    EXPECT_EQ(k["config"]["force_kN"], 1.0);
}

TEST(Report, LocalMode) {
    AnalysisConfig c = small_config();
    c.weight_mode = WeightMode::local;
    const SectionReport r = analyze(fixture(DiscShape{70}), c);
    EXPECT_GT(r.zero_weight_fraction, 0.0);
    EXPECT_LT(r.zero_weight_fraction, 1.0);
    EXPECT_FALSE(r.fibre_threshold);
}

TEST(Report, BatchMatchesSequential) {
    const AnalysisConfig c = small_config();
    std::vector<BatchInput> inputs;
    for (int i = 0; i < 4; ++i) inputs.push_back({"img" + std::to_string(i), fixture(HalfDensityDiscShape{70, 40.0 * i})});
    inputs.push_back({"flat", CalibratedImage(Gray8(50, 50, 3), 0.01)});
    const auto batch = analyze_batch(inputs, c);
    ASSERT_EQ(batch.size(), inputs.size());
    for (int i = 0; i < 4; ++i) {
        ASSERT_TRUE(batch[static_cast<std::size_t>(i)].report);
        EXPECT_EQ(emit_json(*batch[static_cast<std::size_t>(i)].report),
                  emit_json(analyze(inputs[static_cast<std::size_t>(i)].image, c, inputs[static_cast<std::size_t>(i)].sample_id)));
    }
    EXPECT_FALSE(batch[4].report);
    EXPECT_EQ(*batch[4].error, "degenerate histogram");
}

TEST(Report, Overlay) {
    const CalibratedImage img = fixture(DiscShape{90}, 0);
    const SectionReport r = analyze(img, small_config());
    const Rgb8 o = render_overlay(img, r);
    EXPECT_EQ(o.width(), img.width());
    EXPECT_EQ(o.height(), img.height());
    const auto wc = r.properties.centroid_weighted;
    EXPECT_EQ(o(static_cast<int>(std::lround(wc.x)), static_cast<int>(std::lround(wc.y))),
              (std::array<std::uint8_t, 3>{0, 0, 255}));
    ASSERT_TRUE(r.properties.axis1);
    const PointPx end = r.properties.axis1->a;
    EXPECT_NEAR(std::hypot(end.x - 119.5, end.y - 119.5), 90.0, 2.0);
    EXPECT_EQ(o(static_cast<int>(end.x), static_cast<int>(end.y)), (std::array<std::uint8_t, 3>{0, 200, 0}));
    EXPECT_THROW(render_overlay(CalibratedImage(Gray8(10, 10), 1.0), r), Error);
}
