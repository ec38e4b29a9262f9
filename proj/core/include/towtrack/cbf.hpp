#pragma once

#include <array>

#include "towtrack/controller.hpp"
#include "towtrack/transforms.hpp"
#include "towtrack/types.hpp"

namespace towtrack {

/// Barrier margins and gains.
///   eps_psi   CC-1 margin on cos(psi_l - psi_b), in (0, 1)
///   eps_u     CC-2 margin on the surge velocity [m/s]
///   alpha1/2  ECBF gains; alpha1, alpha2 > 0 makes s^2 + alpha2 s + alpha1
///             Hurwitz, which is what the degree-2 condition requires
///   k_class_k linear class-K gain for the degree-1 CC-2 condition [1/s]
struct CbfParams {
    double eps_psi = 15.0 * kPi / 180.0;
    double eps_u = 0.5;
    double alpha1 = 0.01;
    double alpha2 = 0.3;
    double k_class_k = 1.0;

    void validate() const;
};

enum class Branch : int {
    Case1 = 1,  // cos(psi_l - psi_b) >= 0, barrier h =  cos(.) - eps_psi
    Case2 = 2,  // cos(psi_l - psi_b) <  0, barrier h = -cos(.) - eps_psi
};

/// CC-1 row over the correction X = tau - tau_ref.
///
/// With delta = psi_l - psi_b and delta_dot = r_l - psi_b_dot, the degree-2
/// condition on the active barrier is expressed as
///   +-(c1, c2) . tau <= +-sin(delta) M - alpha1 eps_psi,
///   c1 = b_ul sin^2(delta) / p_e,
///   c2 = sin(delta) [eps_ra sin(delta) / p_e + b_r],
///   M  = [u_ld_dot sin(psi_ld - psi_b)
///         + u_ld cos(psi_ld - psi_b)(psi_ld_dot - psi_b_dot)
///         - u_l cos(delta) delta_dot - f_ul sin(delta)
///         - psi_b_dot p_e_dot] / p_e
///        - f_rl + alpha1 cos(delta) - alpha2 sin(delta) delta_dot,
/// upper signs for case 1, lower for case 2. Every term scales with
/// sin(delta), so the row relaxes to a no-op at the barrier's interior
/// maximum and tightens toward the +-pi/2 crossings.
struct Cc1Row {
    bool active = true;  // false when |sin(delta)| < 1e-6 (h at its interior
                         // maximum; the row degenerates and is dropped)
    Branch branch = Branch::Case1;
    std::array<double, 2> a{0.0, 0.0};  // row over X
    double b = 0.0;                     // rhs over X (shifted by a . tau_ref)
    double c1 = 0.0;
    double c2 = 0.0;
    double m_drift = 0.0;  // M as used in the rhs
    double h = 0.0;
    double h_dot = 0.0;
};

/// CC-2 row over X: [-1, 0] . X <= (f_u + k (u - eps_u))/b_u + tau_ref_u,
/// i.e. tau_u >= -(f_u + k (u - eps_u))/b_u (b_u > 0).
struct Cc2Row {
    std::array<double, 2> a{-1.0, 0.0};
    double b = 0.0;
    double h = 0.0;  // u - eps_u
};

/// Both inequality rows A X <= b plus the quantities that produced them.
struct ConstraintSet {
    std::array<std::array<double, 2>, 2> A{{{0.0, 0.0}, {-1.0, 0.0}}};
    std::array<double, 2> b{0.0, 0.0};
    Branch branch = Branch::Case1;
    bool cc1_active = true;
    double c1 = 0.0;
    double c2 = 0.0;
    double m_drift = 0.0;
    double h_cc1 = 0.0;
    double h_cc1_dot = 0.0;
    double h_cc2 = 0.0;

    /// True when X = 0 satisfies both rows, i.e. b >= 0 componentwise.
    bool feasible_at_zero() const { return b[0] >= 0.0 && b[1] >= 0.0; }
};

Cc1Row cc1_row(const PolarBundle& bundle, const ReferencePoint& ref,
               const ControlInput& tau_ref, double b_r, const CbfParams& cp);

Cc2Row cc2_row(double u, double f_u, double b_u, double tau_ref_u,
               const CbfParams& cp);

ConstraintSet assemble_constraints(const Cc1Row& cc1, const Cc2Row& cc2);

}  // namespace towtrack
