#pragma once

#include <array>

#include "towtrack/types.hpp"

namespace towtrack {

/// Pose in the navigation frame plus body-fixed velocities. psi is stored
/// unwrapped (continuous); wrapping is applied only where angle differences
/// are formed.
struct VesselState {
    double x = 0.0;    // [m]
    double y = 0.0;    // [m]
    double psi = 0.0;  // yaw [rad], unwrapped
    double u = 0.0;    // surge velocity [m/s]
    double v = 0.0;    // sway velocity [m/s]
    double r = 0.0;    // yaw rate [rad/s]
};

/// 3-DOF plant coefficients. Linear, quadratic and cubic damping per axis,
/// diagonal inertia, input gains b_u, b_r and the sway lift coefficient
/// eps_r (0 = minimum phase).
struct VesselParams {
    double m11 = 1.2e5;    // [kg]
    double m22 = 1.779e5;  // [kg]
    double m33 = 6.36e7;   // [kg*m^2]

    double d_u = 2.152e4;
    double d_v = 1.47e5;
    double d_r = 8.02e6;
    double d_u2 = 0.2 * 2.152e4;
    double d_u3 = 0.1 * 2.152e4;
    double d_v2 = 0.2 * 1.47e5;
    double d_v3 = 0.1 * 1.47e5;
    double d_r2 = 0.2 * 8.02e6;
    double d_r3 = 0.1 * 8.02e6;

    double b_u = 1.0 / 1.2e5;   // surge input gain [1/kg]
    double b_r = 1.0 / 6.36e7;  // yaw input gain [1/(kg*m^2)]
    double eps_r = 0.0;         // sway lift coefficient

    /// Throws std::invalid_argument on non-finite or out-of-range values.
    void validate() const;
};

/// Time derivative of VesselState, SI units.
struct StateDerivative {
    double dx = 0.0;
    double dy = 0.0;
    double dpsi = 0.0;
    double du = 0.0;
    double dv = 0.0;
    double dr = 0.0;

    std::array<double, 3> nu_dot() const { return {du, dv, dr}; }
};

/// Drift part of the body-frame accelerations (input set to zero).
struct Drift {
    double f_u = 0.0;
    double f_v = 0.0;
    double f_r = 0.0;
};

/// Kinematics and dynamics of the vessel. Rejects non-finite inputs.
StateDerivative eval_dynamics(const VesselState& s, const ControlInput& tau,
                              const VesselParams& p);

/// (f_u, f_v, f_r): eval_dynamics with tau = 0, acceleration rows only.
Drift drift_forces(const VesselState& s, const VesselParams& p);

/// Classical 4th-order Runge-Kutta step with tau held constant (zero-order
/// hold) across the step. Throws IntegrationError if any stage goes
/// non-finite.
VesselState step_rk4(const VesselState& s, const ControlInput& tau,
                     const VesselParams& p, double dt);

}  // namespace towtrack
