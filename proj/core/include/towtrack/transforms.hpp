#pragma once

#include <array>

#include "towtrack/types.hpp"
#include "towtrack/vessel.hpp"

namespace towtrack {

struct ReferencePoint;  // controller.hpp

/// Everything the two polar transformations derive from the vessel state and
/// the tracking error:
///
///   u_l, psi_a        total speed and sideslip angle, psi_a = arctan(v/u)
///   psi_l, r_l        course angle psi + psi_a and its rate r + psi_a_dot
///   p_e, psi_b        position-error radius and azimuth angle atan2(y_e, x_e)
///   f_ul, f_rl        transformed drift, f_ul = cos(psi_a) f_u + sin(psi_a) f_v,
///                     f_rl = f_r + psi_a_ddot
///   b_ul, eps_ra      transformed input gains, b_ul = cos(psi_a) b_u,
///                     eps_ra = sin(psi_a) eps_r
struct PolarBundle {
    double u_l = 0.0;         // [m/s], total speed, >= 0
    double psi_a = 0.0;       // sideslip [rad], in (-pi/2, pi/2)
    double psi_a_dot = 0.0;   // [rad/s]
    double psi_a_ddot = 0.0;  // [rad/s^2]
    double psi_l = 0.0;       // course angle [rad], unwrapped
    double r_l = 0.0;         // course rate [rad/s]

    double p_e = 0.0;      // [m], >= 0
    double psi_b = 0.0;    // azimuth [rad], wrapped to [-pi, pi)
    double psi_b_dot = 0.0;
    double p_e_dot = 0.0;

    double f_ul = 0.0;
    double f_rl = 0.0;
    double b_ul = 0.0;
    double eps_ra = 0.0;
};

/// One-pole low-pass estimate of the body acceleration rates (u_ddot,
/// v_ddot, r_ddot), fed by finite differences of nu_dot. First update
/// initializes the estimate to zero.
struct FilterState {
    std::array<double, 3> nu_ddot{0.0, 0.0, 0.0};
    std::array<double, 3> prev_nu_dot{0.0, 0.0, 0.0};
    double mu = 0.125;  // filter coefficient, 0 < mu <= 1
    bool initialized = false;
};

struct PolarVelocity {
    double u_l;
    double psi_a;
};

struct PolarError {
    double p_e;
    double psi_b;
};

struct SideslipRates {
    double psi_a_dot;
    double psi_a_ddot;
};

struct AzimuthRates {
    double p_e_dot;
    double psi_b_dot;
};

/// Wraps to [-pi, pi); +pi maps to -pi.
double wrap_angle(double theta);

/// First polar transformation. Requires u > 0 (SP-3 otherwise).
PolarVelocity polar_velocity(double u, double v);

/// Second polar transformation on the position error (x_e, y_e) = target
/// minus vessel. Throws SP-4 when p_e < 1e-9.
PolarError polar_error(double x_e, double y_e);

/// psi_a_dot = (u v_dot - v u_dot)/(u^2 + v^2) and its exact time
/// derivative by the quotient rule:
///   psi_a_ddot = (u v_ddot - v u_ddot)/q - (u v_dot - v u_dot) qdot/q^2
/// with q = u^2 + v^2, qdot = 2(u u_dot + v v_dot).
SideslipRates sideslip_rates(double u, double v, double u_dot, double v_dot,
                             double u_ddot, double v_ddot);

/// p_e_dot = (x_e x_e_dot + y_e y_e_dot)/p_e,
/// psi_b_dot = (x_e y_e_dot - y_e x_e_dot)/p_e^2. Requires p_e > 0.
AzimuthRates azimuth_rates(double x_e, double y_e, double x_e_dot, double y_e_dot);

/// Vessel-side half of the bundle (the error fields stay zero).
PolarBundle transformed_dynamics(const VesselState& s, const Drift& drift,
                                 double psi_a_dot, double psi_a_ddot,
                                 const VesselParams& p);

/// Full bundle for one control step. nu_dot is the body acceleration under
/// the currently applied input, nu_ddot the filtered acceleration-rate
/// estimate; both feed the sideslip rates.
PolarBundle polar_bundle(const VesselState& s, const ReferencePoint& ref,
                         const Drift& drift, const std::array<double, 3>& nu_dot,
                         const std::array<double, 3>& nu_ddot,
                         const VesselParams& p);

/// One filter step: nu_ddot_meas = (nu_dot - prev_nu_dot)/dt,
/// nu_ddot <- (1 - mu) nu_ddot + mu nu_ddot_meas.
FilterState lowpass_update(const FilterState& fs, const std::array<double, 3>& nu_dot,
                           double dt);

}  // namespace towtrack
