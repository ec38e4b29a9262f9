#pragma once

#include <string>
#include <vector>

#include "towtrack/cbf.hpp"
#include "towtrack/controller.hpp"
#include "towtrack/qp.hpp"
#include "towtrack/transforms.hpp"
#include "towtrack/vessel.hpp"

namespace towtrack {

/// One piece of the reference trajectory: constant speed, constant turn
/// rate. A zero turn rate gives a straight leg, otherwise a circular arc of
/// radius u_ld / |psi_ld_dot|.
struct TrajectorySegment {
    double duration = 0.0;     // [s]
    double u_ld = 0.0;         // [m/s]
    double psi_ld_dot = 0.0;   // [rad/s]
};

struct TrajectorySpec {
    double x0 = 0.0;
    double y0 = 0.0;
    double psi0 = 0.0;
    std::vector<TrajectorySegment> segments;
};

enum class Mode { ReferenceOnly, QpFiltered };

struct ScenarioConfig {
    VesselParams params;
    Gains gains;
    CbfParams cbf;
    Mode mode = Mode::QpFiltered;
    double dt = 0.01;        // control and integration period [s]
    double duration = 300.0; // [s]
    double filter_mu = 0.125;
    VesselState initial_state;
    TrajectorySpec trajectory;

    void validate() const;
};

/// Instantaneous flags mirrored into the event detector.
struct EventFlags {
    bool cc1_proximity = false;   // |cos(psi_l - psi_b)| < 2 eps_psi
    bool cc2_proximity = false;   // u < eps_u + 0.1
    bool p_e_small = false;       // p_e < 1 m
    bool branch_flip = false;
    bool qp_active = false;       // ||X|| > 1e-6
    bool relaxed = false;
};

struct SimRecord {
    double t = 0.0;
    VesselState state;
    ReferencePoint ref;
    PolarBundle bundle;
    double psi_le = 0.0;
    ControlInput tau_ref;
    ControlInput tau;
    std::array<double, 2> correction{0.0, 0.0};  // X = tau - tau_ref
    ConstraintSet constraints;
    int qp_status = -1;  // -1: QP not solved (reference mode); else qp::Status
    double qp_slack = 0.0;
    double v2 = 0.0;
    EventFlags flags;
};

struct RunOutcome {
    enum class Kind { Completed, Breakdown } kind = Kind::Completed;
    double t = 0.0;      // breakdown time when kind == Breakdown
    std::string reason;  // guard or threshold that fired

    bool completed() const { return kind == Kind::Completed; }
};

struct SimLog {
    std::vector<SimRecord> records;
    RunOutcome outcome;
};

enum class EventType {
    Cc1Proximity,
    Cc2Proximity,
    PeSmall,
    BranchFlip,
    QpActivation,
    InfeasibleRelaxed,
};

const char* event_label(EventType t);

/// Contiguous stretch of samples sharing a flag; instantaneous events have
/// t_begin == t_end.
struct Event {
    EventType type;
    double t_begin = 0.0;
    double t_end = 0.0;
};

/// Piecewise-analytic reference pose at time t; continuous across segment
/// joins, last segment extended beyond the listed durations.
ReferencePoint reference_at(double t, const TrajectorySpec& spec);

/// Closed-loop simulation. Per step: drift and acceleration of the plant,
/// low-pass filter update, polar bundle, stabilizing functions, reference
/// input; in QpFiltered mode the constraint rows are assembled, the QP
/// solved, and tau = tau_ref + X applied, otherwise tau = tau_ref. The state
/// is then advanced one RK4 step.
///
/// The run ends early with a Breakdown outcome (not an exception) when a
/// singular guard fires, an applied input or state component exceeds 1e9, or
/// integration produces a non-finite state.
SimLog simulate(const ScenarioConfig& cfg);

/// Clusters the per-record flags into events.
std::vector<Event> detect_events(const SimLog& log, const CbfParams& cp);

/// The stock scenario shipped with the CLI: a 60 s straight leg at 5 m/s
/// followed by a starboard circle (turn rate -0.05 rad/s, radius 100 m),
/// towing distance 6 m, 300 s at dt = 0.01 s.
ScenarioConfig towing_circle_scenario();

}  // namespace towtrack
