#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "frp/synthetic.hpp"

using namespace frp;

TEST(Synthetic, DiscTruthAndMask) {
    SyntheticSpec s;
    s.shape = DiscShape{30};
    const SyntheticImage img = generate_synthetic(s, 80, 70, 0.1);
    EXPECT_NEAR(img.truth.area_mm2, std::numbers::pi * 9.0, 1e-12);
    EXPECT_DOUBLE_EQ(img.truth.centroid_geometric.x, 39.5);
    EXPECT_DOUBLE_EQ(img.truth.centroid_geometric.y, 34.5);
    const BinaryMask m = shape_mask(s, 80, 70);
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(m[i], img.image.pixels()[i] != s.levels.background);
    }
}

TEST(Synthetic, LatticeIsMirrorSymmetric) {
    SyntheticSpec s;
    s.shape = DiscShape{20};
    const Gray8 g = generate_synthetic(s, 51, 51, 1.0).image.pixels();
    for (int y = 0; y < 51; ++y)
        for (int x = 0; x < 51; ++x) {
            ASSERT_EQ(g(x, y), g(50 - x, y));
            ASSERT_EQ(g(x, y), g(x, 50 - y));
        }
}

TEST(Synthetic, HalfDiscFibreSide) {
    SyntheticSpec s;
    s.shape = HalfDensityDiscShape{20, 90};
    const SyntheticImage img = generate_synthetic(s, 60, 60, 1.0);
    // split at 90 degrees puts the fibre half on top (small row index).
    EXPECT_EQ(img.image.pixels()(30, 15), s.levels.fibre);
    EXPECT_EQ(img.image.pixels()(30, 45), s.levels.epoxy);
    const double d = 4.0 * 1300.0 * 20.0 / (3.0 * std::numbers::pi * 3900.0);
    EXPECT_NEAR(img.truth.shift_mm, d, 1e-12);
    EXPECT_NEAR(img.truth.centroid_weighted.y, 29.5 - d, 1e-12);
    EXPECT_DOUBLE_EQ(img.truth.shift_angle_deg, 90.0);
}

TEST(Synthetic, EllipseTruthOrdersMoments) {
    SyntheticSpec s;
    s.shape = EllipseShape{10, 20, 30};
    const SyntheticImage img = generate_synthetic(s, 60, 60, 1.0);
    EXPECT_NEAR(img.truth.I_1_mm4, std::numbers::pi * 8000.0 * 10.0 / 4.0, 1e-9);
    EXPECT_NEAR(img.truth.I_2_mm4, std::numbers::pi * 20.0 * 1000.0 / 4.0, 1e-9);
}

TEST(Synthetic, NoiseIsSeeded) {
    SyntheticSpec s;
    s.noise = 12;
    s.seed = 5;
    const Gray8 a = generate_synthetic(s, 230, 230, 1.0).image.pixels();
    const Gray8 b = generate_synthetic(s, 230, 230, 1.0).image.pixels();
    EXPECT_EQ(a, b);
    s.seed = 6;
    EXPECT_NE(a, generate_synthetic(s, 230, 230, 1.0).image.pixels());
}

TEST(Synthetic, SatellitesAndBounds) {
    SyntheticSpec s;
    s.shape = DiscShape{10};
    s.satellites = {{3, 3, 1.5}};
    const Gray8 g = generate_synthetic(s, 40, 40, 1.0).image.pixels();
    EXPECT_EQ(g(3, 3), s.levels.fibre);
    s.shape = DiscShape{19};
    try {
        generate_synthetic(s, 40, 40, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::out_of_bounds);
    }
    s.shape = DiscShape{-1};
    EXPECT_THROW(generate_synthetic(s, 40, 40, 1.0), Error);
}
