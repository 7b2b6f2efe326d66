#include <gtest/gtest.h>

#include <cmath>

#include "frp/stress.hpp"
#include "frp/synthetic.hpp"

using namespace frp;

namespace {

SectionProperties half_disc_properties(double split_deg) {
    SyntheticSpec spec;
    spec.shape = HalfDensityDiscShape{80, split_deg};
    const SyntheticImage img = generate_synthetic(spec, 180, 180, 0.01);
    const BinaryMask m = shape_mask(spec, 180, 180);
    WeightMap w(180, 180);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (m[i]) w[i] = img.image.pixels()[i] == spec.levels.fibre ? 2600.0 : 1300.0;
    }
    return compute_section_properties(m, w, 0.01);
}

}  // namespace

TEST(Stress, UniformPublishedRows) {
    EXPECT_NEAR(uniform_stress(68.02, 50.27), 1353.28, 1353.28 * 0.0005);
    EXPECT_NEAR(uniform_stress(26.58, 50.27), 528.71, 528.71 * 0.0005);
    EXPECT_EQ(uniform_stress(0.0, 3.0), 0.0);
    EXPECT_THROW(uniform_stress(1.0, 0.0), Error);
}

TEST(Stress, BendingMoment) {
    EXPECT_EQ(bending_moment(10.0, 0.0), 0.0);
    EXPECT_NEAR(bending_moment(68.02, 0.024), 1.632, 1e-3);
    EXPECT_NEAR(bending_moment(26.58, 0.248), 6.592, 1e-3);
    EXPECT_THROW(bending_moment(1.0, -0.1), Error);
}

TEST(Stress, StressAtPoint) {
    EXPECT_EQ(stress_at_point(5.0, 2.0, 0, 0, 1, 1, 3, 4), uniform_stress(5.0, 2.0));
    EXPECT_EQ(stress_at_point(5.0, 2.0, 7, 9, 1, 1, 0, 0), uniform_stress(5.0, 2.0));
    EXPECT_DOUBLE_EQ(stress_at_point(1, 1, 1, 0, 1, 1, 0, 1), 2000.0);
    EXPECT_DOUBLE_EQ(stress_at_point(1, 1, 0, 1, 1, 1, 1, 0), 0.0);
    EXPECT_THROW(stress_at_point(1, 1, 1, 0, 0, 1, 0, 1), Error);
    EXPECT_NO_THROW(stress_at_point(1, 1, 0, 0, 0, 0, 0, 1));
}

TEST(Stress, Percentages) {
    EXPECT_NEAR(declared_area(8.0), 50.265, 1e-3);
    EXPECT_NEAR(percent_increase(100.0, 102.5), 2.5, 1e-12);
    EXPECT_NEAR(percent_reduction(200.0, 150.0), 25.0, 1e-12);
    EXPECT_THROW(percent_increase(0.0, 1.0), Error);
}

TEST(Stress, CriticalPointsOnHalfDisc) {
    for (double split : {0.0, 75.0, -140.0}) {
        const SectionProperties p = half_disc_properties(split);
        const StressReport r = critical_point_stresses(p, 1.0, declared_area(1.6));
        ASSERT_TRUE(r.sigma_E && r.sigma_A && r.point_E && r.increase_pct_E);
        EXPECT_GT(*r.increase_pct_E, 0.0);
        EXPECT_GE(*r.sigma_E, r.sigma_C);
        EXPECT_LE(*r.sigma_A, r.sigma_C);
        // E sits on the fibre side: its offset from the centre points along split.
        const double ex = r.point_E->x - 89.5;
        const double ey = -(r.point_E->y - 89.5);
        const double rad = split * std::acos(-1.0) / 180.0;
        EXPECT_GT(ex * std::cos(rad) + ey * std::sin(rad), 70.0) << split;
        EXPECT_NEAR(*r.sigma_exp, 1000.0 / declared_area(1.6), 1e-9);
        EXPECT_NEAR(r.moment_kNmm, p.shift.magnitude_mm, 1e-15);
    }
}

TEST(Stress, LinearInForce) {
    const SectionProperties p = half_disc_properties(30.0);
    const StressReport a = critical_point_stresses(p, 2.0);
    const StressReport b = critical_point_stresses(p, 6.0);
    EXPECT_NEAR(*b.sigma_E, 3.0 * *a.sigma_E, 1e-9 * *b.sigma_E);
    EXPECT_NEAR(*b.sigma_A, 3.0 * *a.sigma_A, 1e-9 * *b.sigma_E);
    EXPECT_NEAR(*a.increase_pct_E, *b.increase_pct_E, 1e-9);
    EXPECT_FALSE(a.sigma_exp);
}

TEST(Stress, CentricCase) {
    SectionProperties p = half_disc_properties(0.0);
    p.shift = {};
    const StressReport r = critical_point_stresses(p, 5.0, 50.0);
    EXPECT_FALSE(r.sigma_E);
    EXPECT_FALSE(r.sigma_A);
    EXPECT_TRUE(r.sigma_exp);
    EXPECT_EQ(r.sigma_C, uniform_stress(5.0, p.area_mm2));
    EXPECT_THROW(critical_point_stresses(p, -1.0), Error);
}
