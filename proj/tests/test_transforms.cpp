#include <cmath>
#include <random>

#include <doctest.h>

#include "support/oracles.hpp"
#include "towtrack/controller.hpp"
#include "towtrack/transforms.hpp"

using namespace towtrack;

TEST_CASE("polar_velocity basics") {
    const PolarVelocity a = polar_velocity(1.0, 0.0);
    CHECK(a.u_l == doctest::Approx(1.0));
    CHECK(a.psi_a == doctest::Approx(0.0));

    const PolarVelocity b = polar_velocity(1.0, 1.0);
    CHECK(b.u_l == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.psi_a == doctest::Approx(kPi / 4.0));

    const PolarVelocity c = polar_velocity(0.5, -0.5);
    CHECK(c.u_l == doctest::Approx(std::sqrt(0.5)));
    CHECK(c.psi_a == doctest::Approx(-kPi / 4.0));
}

TEST_CASE("polar_velocity rejects u <= 0 as SP-3") {
    try {
        polar_velocity(0.0, 1.0);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.kind() == Singularity::Sideslip);
        CHECK(std::string(e.what()).find("SP-3") != std::string::npos);
    }
    CHECK_THROWS_AS(polar_velocity(-0.1, 0.0), SingularityError);
}

TEST_CASE("polar_velocity round trip") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> Upos(0.01, 10.0), U(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double u = Upos(rng), v = U(rng);
        const PolarVelocity pv = polar_velocity(u, v);
        CHECK(pv.u_l * std::cos(pv.psi_a) == doctest::Approx(u).epsilon(1e-12));
        CHECK(pv.u_l * std::sin(pv.psi_a) == doctest::Approx(v).epsilon(1e-12));
        CHECK(pv.u_l * pv.u_l == doctest::Approx(u * u + v * v).epsilon(1e-12));
    }
}

TEST_CASE("polar_error basics") {
    const PolarError a = polar_error(3.0, 4.0);
    CHECK(a.p_e == doctest::Approx(5.0));
    CHECK(a.psi_b == doctest::Approx(std::atan2(4.0, 3.0)));

    // +pi maps to the lower end of the half-open interval
    const PolarError b = polar_error(-1.0, 0.0);
    CHECK(b.p_e == doctest::Approx(1.0));
    CHECK(b.psi_b == doctest::Approx(-kPi));

    const PolarError c = polar_error(0.0, 2.0);
    CHECK(c.p_e == doctest::Approx(2.0));
    CHECK(c.psi_b == doctest::Approx(kPi / 2.0));
}

TEST_CASE("polar_error rejects the origin as SP-4") {
    try {
        polar_error(0.0, 0.0);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.kind() == Singularity::Azimuth);
        CHECK(std::string(e.what()).find("SP-4") != std::string::npos);
    }
    CHECK_THROWS_AS(polar_error(1e-10, 0.0), SingularityError);
}

TEST_CASE("wrap_angle basics and properties") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
    CHECK(wrap_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> U(-40.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const double th = U(rng);
        const double w = wrap_angle(th);
        CHECK(w >= -kPi);
        CHECK(w < kPi);
        CHECK(wrap_angle(w) == doctest::Approx(w));  // idempotent
        const int k = static_cast<int>(rng() % 21) - 10;
        CHECK(wrap_angle(th + 2.0 * kPi * k) == doctest::Approx(w).epsilon(1e-9));
    }
}

TEST_CASE("sideslip_rates basics") {
    const SideslipRates pure_surge = sideslip_rates(2.0, 0.0, 0.3, 0.0, -0.1, 0.0);
    CHECK(pure_surge.psi_a_dot == doctest::Approx(0.0));
    CHECK(pure_surge.psi_a_ddot == doctest::Approx(0.0));

    const SideslipRates r = sideslip_rates(1.0, 0.0, 0.0, 1.0, 0.0, 0.0);
    CHECK(r.psi_a_dot == doctest::Approx(1.0));

    CHECK_THROWS_AS(sideslip_rates(0.0, 0.0, 1.0, 1.0, 0.0, 0.0), SingularityError);
}

TEST_CASE("sideslip_rates match finite differences of arctan(v/u)") {
    // (u, v) = (2 + sin t, cos t)
    auto u = [](double t) { return 2.0 + std::sin(t); };
    auto v = [](double t) { return std::cos(t); };
    auto psi_a = [&](double t) { return std::atan(v(t) / u(t)); };

    const double h = 1e-4;
    for (double t = 0.0; t < 6.3; t += 0.37) {
        const SideslipRates r = sideslip_rates(u(t), v(t), std::cos(t), -std::sin(t),
                                               -std::sin(t), -std::cos(t));
        const double d1 = testing::central_diff(psi_a, t, h);
        const double d2 = testing::central_diff2(psi_a, t, h);
        CHECK(r.psi_a_dot == doctest::Approx(d1).epsilon(1e-5));
        CHECK(r.psi_a_ddot == doctest::Approx(d2).epsilon(1e-5));
    }
}

TEST_CASE("azimuth_rates basics") {
    const AzimuthRates rot = azimuth_rates(1.0, 0.0, 0.0, 1.0);
    CHECK(rot.p_e_dot == doctest::Approx(0.0));
    CHECK(rot.psi_b_dot == doctest::Approx(1.0));

    const AzimuthRates rad = azimuth_rates(3.0, 4.0, 3.0, 4.0);
    CHECK(rad.p_e_dot == doctest::Approx(5.0));
    CHECK(rad.psi_b_dot == doctest::Approx(0.0));

    CHECK_THROWS_AS(azimuth_rates(0.0, 0.0, 1.0, 0.0), SingularityError);
}

TEST_CASE("azimuth_rates match finite differences on a smooth error path") {
    auto xe = [](double t) { return 3.0 + std::sin(0.7 * t); };
    auto ye = [](double t) { return -2.0 + 0.5 * std::cos(t); };
    auto pe = [&](double t) { return std::hypot(xe(t), ye(t)); };
    auto pb = [&](double t) { return std::atan2(ye(t), xe(t)); };

    const double h = 1e-4;
    for (double t = 0.0; t < 6.0; t += 0.41) {
        const AzimuthRates r = azimuth_rates(xe(t), ye(t), 0.7 * std::cos(0.7 * t),
                                             -0.5 * std::sin(t));
        CHECK(r.p_e_dot ==
              doctest::Approx(testing::central_diff(pe, t, h)).epsilon(1e-5));
        CHECK(r.psi_b_dot ==
              doctest::Approx(testing::central_diff(pb, t, h)).epsilon(1e-5));
    }
}

TEST_CASE("transformed_dynamics: zero sideslip collapses to the body rows") {
    VesselParams p;
    const VesselState s{0, 0, 0.4, 3.0, 0.0, 0.1};
    const Drift f{0.5, -0.2, 0.01};
    const PolarBundle b = transformed_dynamics(s, f, 0.02, 0.003, p);
    CHECK(b.psi_a == doctest::Approx(0.0));
    CHECK(b.f_ul == doctest::Approx(f.f_u));
    CHECK(b.f_rl == doctest::Approx(f.f_r + 0.003));
    CHECK(b.b_ul == doctest::Approx(p.b_u));
    CHECK(b.eps_ra == doctest::Approx(0.0));
    CHECK(b.r_l == doctest::Approx(s.r + 0.02));
    CHECK(b.psi_l == doctest::Approx(s.psi));
}

TEST_CASE("transformed_dynamics at 45 degree sideslip") {
    VesselParams p;
    const VesselState s{0, 0, 0, 1.0, 1.0, 0.0};  // psi_a = pi/4
    const Drift f{1.0, 1.0, 0.0};
    const PolarBundle b = transformed_dynamics(s, f, 0.0, 0.0, p);
    CHECK(b.f_ul == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.b_ul == doctest::Approx(p.b_u * std::cos(kPi / 4.0)));
}

TEST_CASE("transformed_dynamics gain identities hold exactly") {
    VesselParams p;
    p.eps_r = 0.3;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> Upos(0.1, 8.0), U(-4.0, 4.0);
    for (int i = 0; i < 300; ++i) {
        const VesselState s{0, 0, U(rng), Upos(rng), U(rng), U(rng)};
        const PolarBundle b = transformed_dynamics(s, Drift{}, 0.0, 0.0, p);
        CHECK(b.b_ul == doctest::Approx(p.b_u * std::cos(b.psi_a)).epsilon(1e-15));
        CHECK(b.eps_ra == doctest::Approx(p.eps_r * std::sin(b.psi_a)).epsilon(1e-15));
    }
}

TEST_CASE("course kinematics agree with body kinematics") {
    // x_dot = u_l cos(psi_l), y_dot = u_l sin(psi_l) vs the body-frame rows
    VesselParams p;
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> Upos(0.05, 9.0), U(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const VesselState s{U(rng) * 10, U(rng) * 10, U(rng), Upos(rng), U(rng), U(rng)};
        const StateDerivative d = eval_dynamics(s, ControlInput{}, p);
        const PolarBundle b = transformed_dynamics(s, Drift{}, 0.0, 0.0, p);
        CHECK(b.u_l * std::cos(b.psi_l) == doctest::Approx(d.dx).epsilon(1e-12));
        CHECK(b.u_l * std::sin(b.psi_l) == doctest::Approx(d.dy).epsilon(1e-12));
    }
}

TEST_CASE("position-error rate: two-term form vs inner-product form") {
    // synthetic consistent kinematics: vessel and reference both analytic
    auto vessel_pos = [](double t) {
        return std::array<double, 2>{5.0 * t + std::sin(t), 2.0 * std::cos(0.5 * t)};
    };
    auto ref_pos = [](double t) {
        return std::array<double, 2>{5.0 * t + 6.0, 2.0 + 0.5 * std::sin(0.8 * t)};
    };
    auto vessel_vel = [](double t) {
        return std::array<double, 2>{5.0 + std::cos(t), -std::sin(0.5 * t)};
    };
    auto ref_vel = [](double t) {
        return std::array<double, 2>{5.0, 0.4 * std::cos(0.8 * t)};
    };

    for (double t = 0.0; t < 10.0; t += 0.73) {
        const auto rp = ref_pos(t);
        const auto vp = vessel_pos(t);
        const auto rv = ref_vel(t);
        const auto vv = vessel_vel(t);
        const double x_e = rp[0] - vp[0], y_e = rp[1] - vp[1];
        const AzimuthRates ar =
            azimuth_rates(x_e, y_e, rv[0] - vv[0], rv[1] - vv[1]);

        const double u_ld = std::hypot(rv[0], rv[1]);
        const double psi_ld = std::atan2(rv[1], rv[0]);
        const double u_l = std::hypot(vv[0], vv[1]);
        const double psi_l = std::atan2(vv[1], vv[0]);
        const double psi_b = std::atan2(y_e, x_e);
        const double two_term =
            u_ld * std::cos(psi_ld - psi_b) - u_l * std::cos(psi_l - psi_b);
        CHECK(ar.p_e_dot == doctest::Approx(two_term).epsilon(1e-10));
    }
}

TEST_CASE("lowpass_update behavior") {
    const double dt = 0.01;
    FilterState fs;
    fs.mu = 0.125;

    SUBCASE("first call initializes the estimate to zero") {
        fs = lowpass_update(fs, {3.0, -1.0, 0.5}, dt);
        CHECK(fs.nu_ddot[0] == 0.0);
        CHECK(fs.nu_ddot[1] == 0.0);
        CHECK(fs.nu_ddot[2] == 0.0);
        CHECK(fs.initialized);
    }

    SUBCASE("constant input decays geometrically") {
        fs = lowpass_update(fs, {1.0, 0.0, 0.0}, dt);
        fs.nu_ddot = {8.0, 0.0, 0.0};  // seed a nonzero estimate
        for (int k = 1; k <= 5; ++k) {
            fs = lowpass_update(fs, {1.0, 0.0, 0.0}, dt);
            CHECK(fs.nu_ddot[0] == doctest::Approx(8.0 * std::pow(0.875, k)));
        }
    }

    SUBCASE("a step of size D jumps the estimate by mu D/dt then decays") {
        fs = lowpass_update(fs, {0.0, 0.0, 0.0}, dt);
        fs = lowpass_update(fs, {0.2, 0.0, 0.0}, dt);  // step of 0.2
        CHECK(fs.nu_ddot[0] == doctest::Approx(0.125 * 0.2 / dt));
        fs = lowpass_update(fs, {0.2, 0.0, 0.0}, dt);
        CHECK(fs.nu_ddot[0] == doctest::Approx(0.875 * 0.125 * 0.2 / dt));
    }

    SUBCASE("ramp input converges to the slope") {
        double nu = 0.0;
        fs = lowpass_update(fs, {nu, 0.0, 0.0}, dt);
        for (int k = 0; k < 200; ++k) {
            nu += dt;  // slope 1
            fs = lowpass_update(fs, {nu, 0.0, 0.0}, dt);
        }
        CHECK(std::abs(fs.nu_ddot[0] - 1.0) < 1e-6);
    }
}
