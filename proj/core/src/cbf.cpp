#include "towtrack/cbf.hpp"

#include <cmath>
#include <stdexcept>

namespace towtrack {

namespace {
// Below this the CC-1 row coefficients vanish with the barrier at its
// interior maximum; the row carries no usable direction and is dropped.
constexpr double kDegenerateSin = 1e-6;

// The row participates only within this cosine distance of the +-pi/2
// crossings. Outside the band the rhs tends to the constant -alpha1*eps_psi
// while the coefficients vanish with sin(delta)*b, so enforcement degenerates
// into unbounded corrections against a slack barrier.
constexpr double kGateFactor = 1.2;

// Inner core of a crossing. Within it the case-2 row keeps the lenient
// approach characteristic regardless of h_dot; the stabilizing-function
// discontinuity makes h_dot unreliable there.
constexpr double kFlipCore = 0.05;
}

void CbfParams::validate() const {
    if (!(eps_psi > 0.0 && eps_psi < 1.0))
        throw std::invalid_argument("CbfParams: eps_psi must be in (0, 1) rad-cosine units");
    if (!(eps_u > 0.0))
        throw std::invalid_argument("CbfParams: eps_u must be positive");
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0))
        throw std::invalid_argument("CbfParams: alpha1 and alpha2 must be positive");
    if (!(k_class_k > 0.0))
        throw std::invalid_argument("CbfParams: k_class_k must be positive");
}

Cc1Row cc1_row(const PolarBundle& bundle, const ReferencePoint& ref,
               const ControlInput& tau_ref, double b_r, const CbfParams& cp) {
    if (!(bundle.p_e > 0.0))
        throw SingularityError(Singularity::Azimuth, "cc1_row requires p_e > 0");
    if (!(bundle.u_l > 0.0))
        throw SingularityError(Singularity::Sideslip, "cc1_row requires u_l > 0");

    const double delta = wrap_angle(bundle.psi_l - bundle.psi_b);
    const double sd = std::sin(delta);
    const double cd = std::cos(delta);
    const double delta_dot = bundle.r_l - bundle.psi_b_dot;

    Cc1Row row;
    row.c1 = bundle.b_ul * sd * sd / bundle.p_e;
    row.c2 = sd * (bundle.eps_ra * sd / bundle.p_e + b_r);

    // M split as m_core - alpha2 sin(delta) delta_dot; the damping term's
    // sign is branch- and phase-dependent below.
    const double m_core =
        (ref.u_ld_dot * std::sin(ref.psi_ld - bundle.psi_b) +
         ref.u_ld * std::cos(ref.psi_ld - bundle.psi_b) *
             (ref.psi_ld_dot - bundle.psi_b_dot) -
         bundle.u_l * cd * delta_dot - bundle.f_ul * sd -
         bundle.psi_b_dot * bundle.p_e_dot) / bundle.p_e -
        bundle.f_rl + cp.alpha1 * cd;
    row.m_drift = m_core - cp.alpha2 * sd * delta_dot;

    double rhs_tau;  // a . tau <= rhs_tau
    if (cd >= 0.0) {
        row.branch = Branch::Case1;
        row.h = cd - cp.eps_psi;
        row.h_dot = -sd * delta_dot;
        row.a = {row.c1, row.c2};
        rhs_tau = sd * row.m_drift - cp.alpha1 * cp.eps_psi;
    } else {
        row.branch = Branch::Case2;
        row.h = -cd - cp.eps_psi;
        row.h_dot = sd * delta_dot;
        row.a = {-row.c1, -row.c2};
        // The expansion applied to the case-2 barrier mirrors case 1's
        // damping sign while the barrier is approached (h_dot < 0) and in
        // the flip core; on recovery it keeps the printed sign. Without the
        // mirror the row walls off the downward +pi/2 crossing and the
        // towing loop deadlocks against it.
        const double damping = (row.h_dot < 0.0 || std::abs(cd) < kFlipCore)
                                   ? -cp.alpha2 * sd * sd * delta_dot
                                   : cp.alpha2 * sd * sd * delta_dot;
        rhs_tau = -sd * m_core + damping - cp.alpha1 * cp.eps_psi;
    }

    // shift to the correction X = tau - tau_ref
    row.b = rhs_tau - (row.a[0] * tau_ref.tau_u + row.a[1] * tau_ref.tau_r);
    row.active =
        std::abs(sd) >= kDegenerateSin && std::abs(cd) < kGateFactor * cp.eps_psi;
    return row;
}

Cc2Row cc2_row(double u, double f_u, double b_u, double tau_ref_u,
               const CbfParams& cp) {
    Cc2Row row;
    row.h = u - cp.eps_u;
    row.b = (f_u + cp.k_class_k * row.h) / b_u + tau_ref_u;
    return row;
}

ConstraintSet assemble_constraints(const Cc1Row& cc1, const Cc2Row& cc2) {
    ConstraintSet cs;
    cs.branch = cc1.branch;
    cs.cc1_active = cc1.active;
    if (cc1.active) {
        cs.A[0] = cc1.a;
        cs.b[0] = cc1.b;
    } else {
        cs.A[0] = {0.0, 0.0};  // neutral row, satisfied everywhere
        cs.b[0] = 0.0;
    }
    cs.A[1] = cc2.a;
    cs.b[1] = cc2.b;
    cs.c1 = cc1.c1;
    cs.c2 = cc1.c2;
    cs.m_drift = cc1.m_drift;
    cs.h_cc1 = cc1.h;
    cs.h_cc1_dot = cc1.h_dot;
    cs.h_cc2 = cc2.h;
    return cs;
}

}  // namespace towtrack
