#include "towtrack/vessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace towtrack {

namespace {

bool all_finite(const VesselState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.psi) &&
           std::isfinite(s.u) && std::isfinite(s.v) && std::isfinite(s.r);
}

bool all_finite(const StateDerivative& d) {
    return std::isfinite(d.dx) && std::isfinite(d.dy) && std::isfinite(d.dpsi) &&
           std::isfinite(d.du) && std::isfinite(d.dv) && std::isfinite(d.dr);
}

VesselState advance(const VesselState& s, const StateDerivative& d, double h) {
    return {s.x + h * d.dx,   s.y + h * d.dy, s.psi + h * d.dpsi,
            s.u + h * d.du,   s.v + h * d.dv, s.r + h * d.dr};
}

}  // namespace

void VesselParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("VesselParams: ") + name +
                                        " must be positive and finite");
    };
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("VesselParams: ") + name +
                                        " must be nonnegative and finite");
    };
    positive(m11, "m11");
    positive(m22, "m22");
    positive(m33, "m33");
    nonneg(d_u, "d_u");
    nonneg(d_v, "d_v");
    nonneg(d_r, "d_r");
    nonneg(d_u2, "d_u2");
    nonneg(d_u3, "d_u3");
    nonneg(d_v2, "d_v2");
    nonneg(d_v3, "d_v3");
    nonneg(d_r2, "d_r2");
    nonneg(d_r3, "d_r3");
    if (b_u == 0.0 || !std::isfinite(b_u))
        throw std::invalid_argument("VesselParams: b_u must be nonzero and finite");
    if (b_r == 0.0 || !std::isfinite(b_r))
        throw std::invalid_argument("VesselParams: b_r must be nonzero and finite");
    if (!std::isfinite(eps_r))
        throw std::invalid_argument("VesselParams: eps_r must be finite");
}

StateDerivative eval_dynamics(const VesselState& s, const ControlInput& tau,
                              const VesselParams& p) {
    if (!all_finite(s))
        throw std::invalid_argument("eval_dynamics: non-finite state");
    if (!std::isfinite(tau.tau_u) || !std::isfinite(tau.tau_r))
        throw std::invalid_argument("eval_dynamics: non-finite input");

    const double cpsi = std::cos(s.psi);
    const double spsi = std::sin(s.psi);

    StateDerivative d;
    d.dx = s.u * cpsi - s.v * spsi;
    d.dy = s.u * spsi + s.v * cpsi;
    d.dpsi = s.r;

    d.du = -(p.d_u / p.m11) * s.u + (p.m22 / p.m11) * s.v * s.r
           - (p.d_u2 / p.m11) * std::abs(s.u) * s.u
           - (p.d_u3 / p.m11) * s.u * s.u * s.u + p.b_u * tau.tau_u;

    d.dv = -(p.d_v / p.m22) * s.v - (p.m11 / p.m22) * s.u * s.r
           - (p.d_v2 / p.m22) * std::abs(s.v) * s.v
           - (p.d_v3 / p.m22) * s.v * s.v * s.v + p.eps_r * tau.tau_r;

    d.dr = -(p.d_r / p.m33) * s.r + ((p.m11 - p.m22) / p.m33) * s.u * s.r
           - (p.d_r2 / p.m33) * std::abs(s.r) * s.r
           - (p.d_r3 / p.m33) * s.r * s.r * s.r + p.b_r * tau.tau_r;

    return d;
}

Drift drift_forces(const VesselState& s, const VesselParams& p) {
    const StateDerivative d = eval_dynamics(s, ControlInput{}, p);
    return {d.du, d.dv, d.dr};
}

VesselState step_rk4(const VesselState& s, const ControlInput& tau,
                     const VesselParams& p, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step_rk4: dt must be positive");

    const StateDerivative k1 = eval_dynamics(s, tau, p);
    const VesselState s2 = advance(s, k1, 0.5 * dt);
    if (!all_finite(s2)) throw IntegrationError("step_rk4: non-finite state at stage 2");

    const StateDerivative k2 = eval_dynamics(s2, tau, p);
    const VesselState s3 = advance(s, k2, 0.5 * dt);
    if (!all_finite(s3)) throw IntegrationError("step_rk4: non-finite state at stage 3");

    const StateDerivative k3 = eval_dynamics(s3, tau, p);
    const VesselState s4 = advance(s, k3, dt);
    if (!all_finite(s4)) throw IntegrationError("step_rk4: non-finite state at stage 4");

    const StateDerivative k4 = eval_dynamics(s4, tau, p);

    const double h = dt / 6.0;
    VesselState out{
        s.x + h * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
        s.y + h * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
        s.psi + h * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi),
        s.u + h * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
        s.v + h * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
        s.r + h * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr),
    };
    if (!all_finite(out)) throw IntegrationError("step_rk4: non-finite result");
    return out;
}

}  // namespace towtrack
