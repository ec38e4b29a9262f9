#include "towtrack/harness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace towtrack {

namespace {

constexpr double kBreakdownLimit = 1e9;   // on any state or applied-input component
constexpr double kQpActiveNorm = 1e-6;    // ||X|| above this counts as a correction
constexpr double kCc1ProxFactor = 2.0;    // proximity band |cos(delta)| < factor*eps_psi
constexpr double kCc2ProxMargin = 0.1;    // [m/s] above eps_u
constexpr double kPeSmall = 1.0;          // [m]

bool state_within_limits(const VesselState& s) {
    auto ok = [](double v) { return std::isfinite(v) && std::abs(v) <= kBreakdownLimit; };
    return ok(s.x) && ok(s.y) && ok(s.psi) && ok(s.u) && ok(s.v) && ok(s.r);
}

bool input_within_limits(const ControlInput& tau) {
    auto ok = [](double v) { return std::isfinite(v) && std::abs(v) <= kBreakdownLimit; };
    return ok(tau.tau_u) && ok(tau.tau_r);
}

}  // namespace

const char* singularity_label(Singularity s) {
    switch (s) {
        case Singularity::Stabilizer: return "SP-1 singular stabilizer";
        case Singularity::InputMatrix: return "SP-2 singular input matrix";
        case Singularity::Sideslip: return "SP-3 singular sideslip";
        case Singularity::Azimuth: return "SP-4 singular azimuth";
    }
    return "unknown singularity";
}

const char* event_label(EventType t) {
    switch (t) {
        case EventType::Cc1Proximity: return "cc1_proximity";
        case EventType::Cc2Proximity: return "cc2_proximity";
        case EventType::PeSmall: return "p_e_small";
        case EventType::BranchFlip: return "branch_flip";
        case EventType::QpActivation: return "qp_activation";
        case EventType::InfeasibleRelaxed: return "infeasible_relaxed";
    }
    return "unknown";
}

void ScenarioConfig::validate() const {
    params.validate();
    gains.validate();
    cbf.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("ScenarioConfig: dt must be positive");
    if (!(duration >= 0.0))
        throw std::invalid_argument("ScenarioConfig: duration must be nonnegative");
    if (!(filter_mu > 0.0 && filter_mu <= 1.0))
        throw std::invalid_argument("ScenarioConfig: filter_mu must be in (0, 1]");
    if (!(initial_state.u > 0.0))
        throw std::invalid_argument("ScenarioConfig: initial surge velocity must be positive");
    if (trajectory.segments.empty())
        throw std::invalid_argument("ScenarioConfig: trajectory needs at least one segment");
    double total = 0.0;
    for (const auto& seg : trajectory.segments) {
        if (!(seg.duration > 0.0))
            throw std::invalid_argument("ScenarioConfig: segment durations must be positive");
        total += seg.duration;
    }
    if (total + 1e-9 < duration)
        throw std::invalid_argument("ScenarioConfig: segment durations must cover the run");
}

ReferencePoint reference_at(double t, const TrajectorySpec& spec) {
    if (!(t >= 0.0)) throw std::invalid_argument("reference_at: t must be nonnegative");
    if (spec.segments.empty())
        throw std::invalid_argument("reference_at: empty trajectory");

    double x = spec.x0;
    double y = spec.y0;
    double psi = spec.psi0;
    double local = t;

    auto advance = [&](const TrajectorySegment& seg, double span) {
        if (std::abs(seg.psi_ld_dot) < 1e-12) {
            x += seg.u_ld * span * std::cos(psi);
            y += seg.u_ld * span * std::sin(psi);
        } else {
            const double radius = seg.u_ld / seg.psi_ld_dot;  // signed
            const double psi_new = psi + seg.psi_ld_dot * span;
            x += radius * (std::sin(psi_new) - std::sin(psi));
            y -= radius * (std::cos(psi_new) - std::cos(psi));
            psi = psi_new;
        }
    };

    for (std::size_t i = 0; i < spec.segments.size(); ++i) {
        const TrajectorySegment& seg = spec.segments[i];
        const bool last = i + 1 == spec.segments.size();
        if (local < seg.duration || last) {
            advance(seg, local);  // last segment extends past its duration
            return {x, y, psi, seg.u_ld, 0.0, seg.psi_ld_dot};
        }
        advance(seg, seg.duration);
        local -= seg.duration;
    }
    return {x, y, psi, 0.0, 0.0, 0.0};  // unreachable
}

SimLog simulate(const ScenarioConfig& cfg) {
    cfg.validate();

    SimLog log;
    const long n_steps = static_cast<long>(std::floor(cfg.duration / cfg.dt + 1e-9));
    log.records.reserve(static_cast<std::size_t>(n_steps) + 1);

    VesselState s = cfg.initial_state;
    ControlInput tau_applied{};  // zero-order hold over the previous interval
    FilterState filter;
    filter.mu = cfg.filter_mu;
    std::optional<StabilizingPair> alpha_prev;
    // The backward-difference stabilizer rates pass through the same
    // low-pass as the acceleration estimates; the raw differences amplify
    // the stabilizing functions' secant discontinuity across crossings and
    // ignite the discrete loop.
    AlphaRates alpha_rates_filtered;
    Branch prev_branch = Branch::Case1;

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        SimRecord rec;
        rec.t = t;
        rec.state = s;

        try {
            const StateDerivative deriv = eval_dynamics(s, tau_applied, cfg.params);
            const Drift drift = drift_forces(s, cfg.params);
            filter = lowpass_update(filter, deriv.nu_dot(), cfg.dt);

            rec.ref = reference_at(t, cfg.trajectory);
            rec.bundle = polar_bundle(s, rec.ref, drift, deriv.nu_dot(),
                                      filter.nu_ddot, cfg.params);
            rec.psi_le = wrap_angle(rec.ref.psi_ld - rec.bundle.psi_l);

            const StabilizingPair alphas =
                stabilizing_functions(rec.ref, rec.bundle, cfg.gains);
            ErrorState err;
            err.p_e = rec.bundle.p_e;
            err.psi_le = rec.psi_le;
            err.e_ul = alphas.alpha_ul - rec.bundle.u_l;
            err.e_rl = alphas.alpha_rl - rec.bundle.r_l;

            const AlphaRates raw = stabilizer_rates(alpha_prev, alphas, cfg.dt);
            const double mu = cfg.filter_mu;
            alpha_rates_filtered.alpha_ul_dot =
                (1.0 - mu) * alpha_rates_filtered.alpha_ul_dot + mu * raw.alpha_ul_dot;
            alpha_rates_filtered.alpha_rl_dot =
                (1.0 - mu) * alpha_rates_filtered.alpha_rl_dot + mu * raw.alpha_rl_dot;
            rec.tau_ref = reference_control(err, rec.bundle, alpha_rates_filtered,
                                            cfg.gains, cfg.params.b_r);

            const Cc1Row cc1 = cc1_row(rec.bundle, rec.ref, rec.tau_ref,
                                       cfg.params.b_r, cfg.cbf);
            const Cc2Row cc2 = cc2_row(s.u, drift.f_u, cfg.params.b_u,
                                       rec.tau_ref.tau_u, cfg.cbf);
            rec.constraints = assemble_constraints(cc1, cc2);

            if (cfg.mode == Mode::QpFiltered) {
                const qp::Solution sol =
                    qp::solve(rec.constraints.A, rec.constraints.b, 0);
                rec.correction = sol.x;
                rec.qp_status = static_cast<int>(sol.status);
                rec.qp_slack = sol.slack;
            }
            rec.tau = rec.tau_ref + rec.correction;
            rec.v2 = lyapunov_v2(err, cfg.gains);

            // A bounded input detector makes the reference-only failure a
            // deterministic outcome. Input bursts in QpFiltered mode are the
            // filter doing its job near crossings, so there only finiteness
            // and the state limit apply.
            if (!std::isfinite(rec.tau.tau_u) || !std::isfinite(rec.tau.tau_r) ||
                (cfg.mode == Mode::ReferenceOnly && !input_within_limits(rec.tau))) {
                log.outcome = {RunOutcome::Kind::Breakdown, t,
                               "applied input exceeded 1e9"};
                return log;
            }

            const double delta = wrap_angle(rec.bundle.psi_l - rec.bundle.psi_b);
            rec.flags.cc1_proximity =
                std::abs(std::cos(delta)) < kCc1ProxFactor * cfg.cbf.eps_psi;
            rec.flags.cc2_proximity = s.u < cfg.cbf.eps_u + kCc2ProxMargin;
            rec.flags.p_e_small = rec.bundle.p_e < kPeSmall;
            rec.flags.branch_flip = k > 0 && rec.constraints.branch != prev_branch;
            rec.flags.qp_active =
                std::hypot(rec.correction[0], rec.correction[1]) > kQpActiveNorm;
            rec.flags.relaxed =
                rec.qp_status == static_cast<int>(qp::Status::InfeasibleRelaxed);

            prev_branch = rec.constraints.branch;
            alpha_prev = alphas;
            log.records.push_back(rec);

            if (k < n_steps) {
                s = step_rk4(s, rec.tau, cfg.params, cfg.dt);
                tau_applied = rec.tau;
                if (!state_within_limits(s)) {
                    log.outcome = {RunOutcome::Kind::Breakdown, t + cfg.dt,
                                   "state exceeded 1e9"};
                    return log;
                }
            }
        } catch (const SingularityError& e) {
            log.outcome = {RunOutcome::Kind::Breakdown, t, e.what()};
            return log;
        } catch (const IntegrationError& e) {
            log.outcome = {RunOutcome::Kind::Breakdown, t + cfg.dt, e.what()};
            return log;
        }
    }

    log.outcome = {RunOutcome::Kind::Completed, cfg.duration, ""};
    return log;
}

std::vector<Event> detect_events(const SimLog& log, const CbfParams&) {
    std::vector<Event> events;
    auto flag_of = [](const SimRecord& r, EventType t) {
        switch (t) {
            case EventType::Cc1Proximity: return r.flags.cc1_proximity;
            case EventType::Cc2Proximity: return r.flags.cc2_proximity;
            case EventType::PeSmall: return r.flags.p_e_small;
            case EventType::BranchFlip: return r.flags.branch_flip;
            case EventType::QpActivation: return r.flags.qp_active;
            case EventType::InfeasibleRelaxed: return r.flags.relaxed;
        }
        return false;
    };

    for (EventType type : {EventType::Cc1Proximity, EventType::Cc2Proximity,
                           EventType::PeSmall, EventType::BranchFlip,
                           EventType::QpActivation, EventType::InfeasibleRelaxed}) {
        bool open = false;
        Event cur{type, 0.0, 0.0};
        for (const SimRecord& r : log.records) {
            if (flag_of(r, type)) {
                if (!open) {
                    cur.t_begin = r.t;
                    open = true;
                }
                cur.t_end = r.t;
            } else if (open) {
                events.push_back(cur);
                open = false;
            }
        }
        if (open) events.push_back(cur);
    }
    return events;
}

ScenarioConfig towing_circle_scenario() {
    ScenarioConfig cfg;
    cfg.mode = Mode::QpFiltered;
    cfg.dt = 0.01;
    cfg.duration = 300.0;
    cfg.filter_mu = 0.125;
    cfg.initial_state = {90.0, 25.0, 30.0 * kPi / 180.0, 1.0, 0.0, 0.0};
    cfg.trajectory.x0 = 100.0;
    cfg.trajectory.y0 = 30.0;
    cfg.trajectory.psi0 = 0.0;
    cfg.trajectory.segments = {{60.0, 5.0, 0.0}, {240.0, 5.0, -0.05}};
    return cfg;
}

}  // namespace towtrack
