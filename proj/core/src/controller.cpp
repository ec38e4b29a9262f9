#include "towtrack/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace towtrack {

namespace {
constexpr double kSingularTol = 1e-9;
}

void Gains::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("Gains: ") + name +
                                        " must be positive and finite");
    };
    positive(k_p, "k_p");
    positive(k_psi, "k_psi");
    positive(k_u, "k_u");
    positive(k_r, "k_r");
    positive(gamma_psi, "gamma_psi");
    positive(gamma_u, "gamma_u");
    positive(gamma_r, "gamma_r");
    positive(c_d, "c_d");
}

StabilizingPair stabilizing_functions(const ReferencePoint& ref,
                                      const PolarBundle& bundle, const Gains& g) {
    const double delta = wrap_angle(bundle.psi_l - bundle.psi_b);
    const double cd = std::cos(delta);
    if (std::abs(cd) < kSingularTol)
        throw SingularityError(Singularity::Stabilizer,
                               "cos(psi_l - psi_b) vanished at delta = " +
                                   std::to_string(delta));

    const double psi_le = wrap_angle(ref.psi_ld - bundle.psi_l);
    StabilizingPair out;
    out.alpha_ul = (ref.u_ld * std::cos(ref.psi_ld - bundle.psi_b) +
                    g.k_p * (bundle.p_e - g.c_d)) / cd;
    out.alpha_rl = ref.psi_ld_dot + (g.k_psi / g.gamma_psi) * psi_le;
    return out;
}

AlphaRates stabilizer_rates(const std::optional<StabilizingPair>& prev,
                            const StabilizingPair& cur, double dt) {
    if (!prev) return {0.0, 0.0};
    if (!(dt > 0.0))
        throw std::invalid_argument("stabilizer_rates: dt must be positive");
    return {(cur.alpha_ul - prev->alpha_ul) / dt,
            (cur.alpha_rl - prev->alpha_rl) / dt};
}

ControlInput reference_control(const ErrorState& e, const PolarBundle& bundle,
                               const AlphaRates& alpha_dots, const Gains& g,
                               double b_r) {
    if (std::abs(bundle.b_ul) < kSingularTol)
        throw SingularityError(Singularity::InputMatrix,
                               "b_ul vanished (cos(psi_a) ~ 0)");
    if (b_r == 0.0)
        throw std::invalid_argument("reference_control: b_r must be nonzero");

    const double delta = wrap_angle(bundle.psi_l - bundle.psi_b);

    const double rhs_u = alpha_dots.alpha_ul_dot - bundle.f_ul +
                         (g.k_u * e.e_ul + (e.p_e - g.c_d) * std::cos(delta)) /
                             g.gamma_u;
    const double rhs_r = alpha_dots.alpha_rl_dot - bundle.f_rl +
                         (g.k_r * e.e_rl + g.gamma_psi * e.psi_le) / g.gamma_r;

    // [[b_ul, eps_ra], [0, b_r]]^-1 applied to (rhs_u, rhs_r)
    ControlInput tau;
    tau.tau_r = rhs_r / b_r;
    tau.tau_u = (rhs_u - bundle.eps_ra * tau.tau_r) / bundle.b_ul;
    return tau;
}

double lyapunov_v2(const ErrorState& e, const Gains& g) {
    const double dp = e.p_e - g.c_d;
    return 0.5 * (dp * dp + g.gamma_psi * e.psi_le * e.psi_le) +
           0.5 * (g.gamma_u * e.e_ul * e.e_ul + g.gamma_r * e.e_rl * e.e_rl);
}

double min_towing_distance(double p_e0, double v_r0) {
    if (!(p_e0 > 0.0))
        throw std::invalid_argument("min_towing_distance: p_e0 must be positive");
    if (!(v_r0 >= 0.0))
        throw std::invalid_argument("min_towing_distance: v_r0 must be nonnegative");
    return (0.5 * p_e0 * p_e0 + v_r0) / p_e0;
}

double printed_decay_rate(const Gains& g) {
    return 0.5 * std::min({1.0 / g.k_p, g.gamma_psi / g.k_psi,
                           g.gamma_u / g.k_u, g.gamma_r / g.k_r});
}

}  // namespace towtrack
