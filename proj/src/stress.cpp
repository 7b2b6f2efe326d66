#include "frp/stress.hpp"

#include <cmath>
#include <numbers>

namespace frp {
namespace {

constexpr double kMPaPerKNmm2 = 1000.0;

void require_force(double force_kN) {
    if (!(force_kN >= 0.0) || !std::isfinite(force_kN)) {
        throw Error(ErrorKind::invalid_argument, "force must be finite and >= 0");
    }
}

}  // namespace

double uniform_stress(double force_kN, double area_mm2) {
    if (!(area_mm2 > 0.0)) throw Error(ErrorKind::invalid_argument, "area must be positive");
    return force_kN / area_mm2 * kMPaPerKNmm2;
}

double bending_moment(double force_kN, double eccentricity_mm) {
    if (!(eccentricity_mm >= 0.0)) throw Error(ErrorKind::invalid_argument, "eccentricity must be >= 0");
    return force_kN * eccentricity_mm;
}

double stress_at_point(double force_kN, double area_mm2, double M_1, double M_2, double I_1, double I_2, double c_1,
                       double c_2) {
    double s = uniform_stress(force_kN, area_mm2) / kMPaPerKNmm2;
    if (M_1 != 0.0) {
        if (!(I_1 > 0.0)) throw Error(ErrorKind::invalid_argument, "I_1 must be positive for a nonzero M_1");
        s += M_1 / I_1 * c_2;
    }
    if (M_2 != 0.0) {
        if (!(I_2 > 0.0)) throw Error(ErrorKind::invalid_argument, "I_2 must be positive for a nonzero M_2");
        s -= M_2 / I_2 * c_1;
    }
    return s * kMPaPerKNmm2;
}

double declared_area(double diameter_mm) {
    if (!(diameter_mm > 0.0)) throw Error(ErrorKind::invalid_argument, "diameter must be positive");
    return std::numbers::pi * diameter_mm * diameter_mm / 4.0;
}

double percent_increase(double base, double value) {
    if (base == 0.0) throw Error(ErrorKind::invalid_argument, "percentage base must be nonzero");
    return 100.0 * (value - base) / base;
}

double percent_reduction(double base, double value) {
    if (base == 0.0) throw Error(ErrorKind::invalid_argument, "percentage base must be nonzero");
    return 100.0 * (base - value) / base;
}

StressReport critical_point_stresses(const SectionProperties& props, double force_kN,
                                     std::optional<double> declared_area_mm2) {
    require_force(force_kN);
    StressReport r;
    r.force_kN = force_kN;
    if (declared_area_mm2) r.sigma_exp = uniform_stress(force_kN, *declared_area_mm2);
    r.sigma_C = uniform_stress(force_kN, props.area_mm2);
    r.moment_kNmm = bending_moment(force_kN, props.shift.magnitude_mm);
    if (props.shift.magnitude_mm == 0.0 || !props.eccentricity) return r;

    const PrincipalFrame frame = principal_frame(props.principal.theta_deg);
    // Signs put the increase on the side the weighted centroid moved to.
    const double M_1 = force_kN * props.e2_mm;
    const double M_2 = -force_kN * props.e1_mm;
    auto sigma = [&](const PointPx& p) {
        const double y = (p.x - props.centroid_weighted.x) * props.scale;
        const double z = -(p.y - props.centroid_weighted.y) * props.scale;
        const double c_1 = y * frame.axis1.x + z * frame.axis1.y;
        const double c_2 = y * frame.axis2.x + z * frame.axis2.y;
        return stress_at_point(force_kN, props.area_mm2, M_1, M_2, props.principal.I_1, props.principal.I_2, c_1,
                               c_2);
    };
    const PointPx& a = props.eccentricity->a;
    const PointPx& b = props.eccentricity->b;
    const double sa = sigma(a);
    const double sb = sigma(b);
    const bool a_is_E = sa >= sb;
    r.point_E = a_is_E ? a : b;
    r.point_A = a_is_E ? b : a;
    r.sigma_E = a_is_E ? sa : sb;
    r.sigma_A = a_is_E ? sb : sa;
    if (r.sigma_C > 0.0) r.increase_pct_E = percent_increase(r.sigma_C, *r.sigma_E);
    return r;
}

}  // namespace frp
