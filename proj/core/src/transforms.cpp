#include "towtrack/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "towtrack/controller.hpp"

namespace towtrack {

double wrap_angle(double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("wrap_angle: non-finite angle");
    const double two_pi = 2.0 * kPi;
    double w = std::fmod(theta + kPi, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w -= two_pi;  // rounding can land exactly on 2*pi
    return w - kPi;
}

PolarVelocity polar_velocity(double u, double v) {
    if (!(u > 0.0))
        throw SingularityError(Singularity::Sideslip,
                               "sideslip angle requires u > 0, got u = " +
                                   std::to_string(u));
    return {std::sqrt(u * u + v * v), std::atan(v / u)};
}

PolarError polar_error(double x_e, double y_e) {
    const double p_e = std::sqrt(x_e * x_e + y_e * y_e);
    if (p_e < 1e-9)
        throw SingularityError(Singularity::Azimuth,
                               "azimuth angle undefined at p_e < 1e-9");
    return {p_e, wrap_angle(std::atan2(y_e, x_e))};
}

SideslipRates sideslip_rates(double u, double v, double u_dot, double v_dot,
                             double u_ddot, double v_ddot) {
    const double q = u * u + v * v;
    if (!(q > 0.0))
        throw SingularityError(Singularity::Sideslip,
                               "sideslip rates undefined at u = v = 0");
    const double num = u * v_dot - v * u_dot;
    const double q_dot = 2.0 * (u * u_dot + v * v_dot);
    const double psi_a_dot = num / q;
    const double psi_a_ddot =
        (u * v_ddot - v * u_ddot) / q - num * q_dot / (q * q);
    return {psi_a_dot, psi_a_ddot};
}

AzimuthRates azimuth_rates(double x_e, double y_e, double x_e_dot, double y_e_dot) {
    const double p_e2 = x_e * x_e + y_e * y_e;
    const double p_e = std::sqrt(p_e2);
    if (!(p_e > 0.0))
        throw SingularityError(Singularity::Azimuth,
                               "azimuth rates undefined at p_e = 0");
    return {(x_e * x_e_dot + y_e * y_e_dot) / p_e,
            (x_e * y_e_dot - y_e * x_e_dot) / p_e2};
}

PolarBundle transformed_dynamics(const VesselState& s, const Drift& drift,
                                 double psi_a_dot, double psi_a_ddot,
                                 const VesselParams& p) {
    const PolarVelocity pv = polar_velocity(s.u, s.v);
    const double ca = std::cos(pv.psi_a);
    const double sa = std::sin(pv.psi_a);

    PolarBundle b;
    b.u_l = pv.u_l;
    b.psi_a = pv.psi_a;
    b.psi_a_dot = psi_a_dot;
    b.psi_a_ddot = psi_a_ddot;
    b.psi_l = s.psi + pv.psi_a;
    b.r_l = s.r + psi_a_dot;
    b.f_ul = ca * drift.f_u + sa * drift.f_v;
    b.f_rl = drift.f_r + psi_a_ddot;
    b.b_ul = ca * p.b_u;
    b.eps_ra = sa * p.eps_r;
    return b;
}

PolarBundle polar_bundle(const VesselState& s, const ReferencePoint& ref,
                         const Drift& drift, const std::array<double, 3>& nu_dot,
                         const std::array<double, 3>& nu_ddot,
                         const VesselParams& p) {
    const SideslipRates sr =
        sideslip_rates(s.u, s.v, nu_dot[0], nu_dot[1], nu_ddot[0], nu_ddot[1]);
    PolarBundle b = transformed_dynamics(s, drift, sr.psi_a_dot, sr.psi_a_ddot, p);

    const double x_e = ref.x_d - s.x;
    const double y_e = ref.y_d - s.y;
    const PolarError pe = polar_error(x_e, y_e);

    // error-point velocity: reference kinematics minus vessel kinematics
    const double x_e_dot = ref.u_ld * std::cos(ref.psi_ld) -
                           (s.u * std::cos(s.psi) - s.v * std::sin(s.psi));
    const double y_e_dot = ref.u_ld * std::sin(ref.psi_ld) -
                           (s.u * std::sin(s.psi) + s.v * std::cos(s.psi));
    const AzimuthRates ar = azimuth_rates(x_e, y_e, x_e_dot, y_e_dot);

    b.p_e = pe.p_e;
    b.psi_b = pe.psi_b;
    b.p_e_dot = ar.p_e_dot;
    b.psi_b_dot = ar.psi_b_dot;
    return b;
}

FilterState lowpass_update(const FilterState& fs, const std::array<double, 3>& nu_dot,
                           double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("lowpass_update: dt must be positive");

    FilterState out = fs;
    if (!fs.initialized) {
        out.nu_ddot = {0.0, 0.0, 0.0};
        out.prev_nu_dot = nu_dot;
        out.initialized = true;
        return out;
    }
    for (int i = 0; i < 3; ++i) {
        const double meas = (nu_dot[i] - fs.prev_nu_dot[i]) / dt;
        out.nu_ddot[i] = (1.0 - fs.mu) * fs.nu_ddot[i] + fs.mu * meas;
    }
    out.prev_nu_dot = nu_dot;
    return out;
}

}  // namespace towtrack
