#include <cmath>

#include <doctest.h>

#include "towtrack/controller.hpp"
#include "towtrack/harness.hpp"

using namespace towtrack;

namespace {

/// Straight-line towing scenario with the vessel already on station: no
/// crossings, no transients worth the name.
ScenarioConfig benign_scenario() {
    ScenarioConfig cfg = towing_circle_scenario();
    cfg.duration = 40.0;
    cfg.trajectory.segments = {{60.0, 5.0, 0.0}};
    cfg.initial_state = {94.0, 30.0, 0.0, 5.0, 0.0, 0.0};  // 6 m behind
    return cfg;
}

}  // namespace

TEST_CASE("reference_at: stock scenario checkpoints") {
    const TrajectorySpec spec = towing_circle_scenario().trajectory;

    const ReferencePoint a = reference_at(0.0, spec);
    CHECK(a.x_d == doctest::Approx(100.0));
    CHECK(a.y_d == doctest::Approx(30.0));
    CHECK(a.psi_ld == doctest::Approx(0.0));
    CHECK(a.u_ld == doctest::Approx(5.0));
    CHECK(a.u_ld_dot == 0.0);
    CHECK(a.psi_ld_dot == 0.0);

    const ReferencePoint b = reference_at(60.0, spec);
    CHECK(b.x_d == doctest::Approx(400.0));
    CHECK(b.y_d == doctest::Approx(30.0));
    CHECK(b.psi_ld == doctest::Approx(0.0));
    CHECK(b.psi_ld_dot == doctest::Approx(-0.05));

    // half circle of radius u/|rate| = 100 m: diametrically opposite point
    const ReferencePoint c = reference_at(60.0 + kPi / 0.05, spec);
    CHECK(wrap_angle(c.psi_ld) == doctest::Approx(-kPi));
    CHECK(c.x_d == doctest::Approx(400.0).epsilon(1e-9));
    CHECK(c.y_d == doctest::Approx(-170.0).epsilon(1e-9));
}

TEST_CASE("reference_at: continuity at joins and extension past the end") {
    const TrajectorySpec spec = towing_circle_scenario().trajectory;
    for (double join : {60.0}) {
        const ReferencePoint before = reference_at(join - 1e-9, spec);
        const ReferencePoint after = reference_at(join + 1e-9, spec);
        CHECK(before.x_d == doctest::Approx(after.x_d).epsilon(1e-7));
        CHECK(before.y_d == doctest::Approx(after.y_d).epsilon(1e-7));
        CHECK(before.psi_ld == doctest::Approx(after.psi_ld).epsilon(1e-7));
    }
    // last segment extended: still on the circle, turning
    const ReferencePoint far = reference_at(1000.0, spec);
    CHECK(far.psi_ld_dot == doctest::Approx(-0.05));
    CHECK(far.u_ld == doctest::Approx(5.0));
    CHECK_THROWS_AS(reference_at(-1.0, spec), std::invalid_argument);
}

TEST_CASE("reference_at satisfies its own kinematics") {
    const TrajectorySpec spec = towing_circle_scenario().trajectory;
    const double h = 1e-6;
    for (double t : {1.0, 30.0, 59.0, 61.0, 100.0, 200.0}) {
        const ReferencePoint p0 = reference_at(t - h, spec);
        const ReferencePoint p1 = reference_at(t + h, spec);
        const ReferencePoint pc = reference_at(t, spec);
        CHECK((p1.x_d - p0.x_d) / (2 * h) ==
              doctest::Approx(pc.u_ld * std::cos(pc.psi_ld)).epsilon(1e-6));
        CHECK((p1.y_d - p0.y_d) / (2 * h) ==
              doctest::Approx(pc.u_ld * std::sin(pc.psi_ld)).epsilon(1e-6));
    }
}

TEST_CASE("scenario validation") {
    ScenarioConfig cfg = towing_circle_scenario();
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = towing_circle_scenario();
    cfg.initial_state.u = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = towing_circle_scenario();
    cfg.trajectory.segments.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = towing_circle_scenario();
    cfg.duration = 500.0;  // segments cover only 300 s
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("simulate: zero duration yields the initial record only") {
    ScenarioConfig cfg = benign_scenario();
    cfg.duration = 0.0;
    cfg.trajectory.segments = {{1.0, 5.0, 0.0}};
    const SimLog log = simulate(cfg);
    CHECK(log.outcome.completed());
    CHECK(log.records.size() == 1);
    CHECK(log.records[0].t == 0.0);
}

TEST_CASE("simulate: log stride and ordering invariants") {
    ScenarioConfig cfg = benign_scenario();
    cfg.duration = 7.0;
    const SimLog log = simulate(cfg);
    REQUIRE(log.outcome.completed());
    CHECK(log.records.size() == 701);
    for (std::size_t k = 1; k < log.records.size(); ++k) {
        CHECK(log.records[k].t > log.records[k - 1].t);
        CHECK(log.records[k].t - log.records[k - 1].t ==
              doctest::Approx(cfg.dt).epsilon(1e-9));
    }
}

TEST_CASE("simulate: benign towing stays locked with no events") {
    const ScenarioConfig cfg = benign_scenario();
    const SimLog log = simulate(cfg);
    REQUIRE(log.outcome.completed());

    for (const SimRecord& r : log.records) {
        CHECK(std::abs(r.bundle.p_e - 6.0) < 0.01);
        CHECK(std::abs(r.state.u - 5.0) < 0.01);
        CHECK(r.correction[0] == 0.0);
        CHECK(r.correction[1] == 0.0);
    }
    CHECK(detect_events(log, cfg.cbf).empty());

    // towing-distance bound respected here, so p_e stays positive
    const SimRecord& first = log.records.front();
    ErrorState e0;
    e0.psi_le = first.psi_le;
    const double v_r0 = cfg.gains.gamma_psi * e0.psi_le * e0.psi_le;
    CHECK(cfg.gains.c_d >= min_towing_distance(first.bundle.p_e, v_r0));
    for (const SimRecord& r : log.records) CHECK(r.bundle.p_e > 0.0);
}

TEST_CASE("simulate: pre-turn stretch of the stock scenario is quiet") {
    ScenarioConfig cfg = towing_circle_scenario();
    cfg.mode = Mode::ReferenceOnly;
    cfg.duration = 50.0;
    const SimLog log = simulate(cfg);
    REQUIRE(log.outcome.completed());
    // transient settles, then no proximity, corrections or relaxations
    for (const SimRecord& r : log.records) {
        CHECK_FALSE(r.flags.cc1_proximity);
        CHECK_FALSE(r.flags.cc2_proximity);
        CHECK_FALSE(r.flags.p_e_small);
        CHECK(r.correction[0] == 0.0);
    }
    CHECK(detect_events(log, cfg.cbf).empty());
}

TEST_CASE("simulate: reference mode breaks down at the first crossing") {
    ScenarioConfig cfg = towing_circle_scenario();
    cfg.mode = Mode::ReferenceOnly;
    const SimLog log = simulate(cfg);
    CHECK_FALSE(log.outcome.completed());
    CHECK(log.outcome.t > 60.0);
    CHECK(log.outcome.t < 130.0);
    REQUIRE_FALSE(log.records.empty());
    const SimRecord& last = log.records.back();
    const double delta = wrap_angle(last.bundle.psi_l - last.bundle.psi_b);
    CHECK(std::abs(std::abs(delta) - kPi / 2.0) < 5.0 * kPi / 180.0);
}

TEST_CASE("simulate: qp mode completes the circle and keeps the floor") {
    const ScenarioConfig cfg = towing_circle_scenario();
    const SimLog log = simulate(cfg);
    REQUIRE(log.outcome.completed());
    CHECK(log.records.size() == 30001);

    double min_u = 1e9;
    for (const SimRecord& r : log.records) {
        min_u = std::min(min_u, r.state.u);
        // correction is exactly zero whenever the rows allow it
        if (r.constraints.feasible_at_zero()) {
            CHECK(r.correction[0] == 0.0);
            CHECK(r.correction[1] == 0.0);
        }
    }
    CHECK(min_u >= cfg.cbf.eps_u - 1e-3);
}

TEST_CASE("detect_events: clusters and types on the stock qp run") {
    const ScenarioConfig cfg = towing_circle_scenario();
    const SimLog log = simulate(cfg);
    REQUIRE(log.outcome.completed());
    const std::vector<Event> events = detect_events(log, cfg.cbf);
    CHECK_FALSE(events.empty());

    std::vector<Event> flips, activations;
    for (const Event& e : events) {
        if (e.type == EventType::BranchFlip) flips.push_back(e);
        if (e.type == EventType::QpActivation) activations.push_back(e);
    }
    CHECK(flips.size() >= 2);  // the circle forces repeated crossings
    CHECK_FALSE(activations.empty());
    // at least one activation cluster near every crossing
    for (const Event& f : flips) {
        bool near = false;
        for (const Event& a : activations)
            if (f.t_begin <= a.t_end + 5.0 && a.t_begin <= f.t_end + 5.0) near = true;
        CHECK(near);
    }
    for (const Event& e : events) CHECK(e.t_begin <= e.t_end);

    const SimLog empty;
    CHECK(detect_events(empty, cfg.cbf).empty());
}

TEST_CASE("simulate is deterministic") {
    ScenarioConfig cfg = towing_circle_scenario();
    cfg.duration = 20.0;
    const SimLog a = simulate(cfg);
    const SimLog b = simulate(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(a.records[k].state.x == b.records[k].state.x);
        CHECK(a.records[k].tau.tau_u == b.records[k].tau.tau_u);
        CHECK(a.records[k].v2 == b.records[k].v2);
    }
}
