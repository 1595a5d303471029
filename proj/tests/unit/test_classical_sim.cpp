#include "doctest.h"
#include "oracles.hpp"

#include "kpdm/classical_sim.hpp"
#include "kpdm/errors.hpp"
#include "kpdm/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace kpdm;
using doctest::Approx;

namespace {

MassProfile profile(double kappa) { return {1.0, DeformationParameter(kappa)}; }

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("free particle follows ln_kappa(exp(v0 t))") {
    const double kappa = 0.8;
    const double v0 = 1.3;
    const auto pr = profile(kappa);
    const double T = 5.0 / (v0 * kappa);
    const auto traj = integrate(pr, PotentialSpec::free(), {0.0, v0, 0.0}, 1e-3, T);
    CHECK_FALSE(traj.halted);
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const double expect = free_trajectory(v0, pr.kappa, s.t);
        worst = std::max(worst, std::abs(s.x - expect) / std::max(std::abs(expect), 1e-300));
    }
    CHECK(worst < 1e-8);
    CHECK(free_trajectory(v0, pr.kappa, 0.7) == Approx(klog(std::exp(v0 * 0.7), pr.kappa)));
}

TEST_CASE("oscillator trajectory matches A_kappa cos(Omega_kappa t)") {
    for (double kA : {0.0, 0.5}) {
        const double A0 = 1.0;
        const auto pr = profile(kA / A0);
        const auto orbit = oscillator_orbit_from_amplitude(A0, 1.0, pr);
        const double period = orbit.period();
        const auto traj = integrate(pr, PotentialSpec::ml_oscillator(1.0),
                                    oscillator_orbit_state(orbit, pr, 0.0), period / 1000.0,
                                    10.0 * period);
        double worst = 0.0;
        for (const auto& s : traj.samples) {
            worst = std::max(worst, std::abs(s.x - orbit.A_kappa * std::cos(orbit.Omega_kappa * s.t)));
        }
        CHECK(worst / orbit.A_kappa < 1e-8);
        CHECK(traj.energy_drift < 1e-8);
    }
}

TEST_CASE("orbit parameters") {
    const auto o0 = oscillator_orbit_from_amplitude(1.0, 1.0, profile(0.0));
    CHECK(o0.A_kappa == 1.0);
    CHECK(o0.Omega_kappa == 1.0);
    CHECK(o0.bounded());

    const auto o5 = oscillator_orbit_from_amplitude(1.0, 1.0, profile(0.5));
    CHECK(o5.A_kappa == Approx(1.0 / std::sqrt(0.75)));
    CHECK(o5.Omega_kappa == Approx(std::sqrt(0.75)));
    CHECK(o5.W_kappa == Approx(2.0));

    CHECK(oscillator_orbit_from_amplitude(1.0, 1.0, profile(0.9)).regime == OrbitRegime::bounded);
    CHECK(oscillator_orbit_from_amplitude(1.0, 1.0, profile(1.1)).regime == OrbitRegime::unbounded);
    CHECK(oscillator_orbit_from_amplitude(1.0, 1.0, profile(1.0)).regime == OrbitRegime::separatrix);

    // The energy and amplitude parameterizations agree.
    const auto oe = oscillator_orbit_from_energy(o5.energy, 1.0, profile(0.5));
    CHECK(oe.A_kappa == Approx(o5.A_kappa));
    CHECK(oe.A0 == Approx(1.0));
}

TEST_CASE("unbounded orbit escapes and reports its pseudo-momentum range") {
    // Kinetic energy 0.72 exceeds the well depth 1/(2 kappa^2) = 0.41.
    const auto pr = profile(1.1);
    const auto traj = integrate(pr, PotentialSpec::ml_oscillator(1.0), {0.0, 1.2, 0.0}, 1e-3, 200.0,
                                {10, 1e6});
    CHECK(traj.halted);
    CHECK_FALSE(traj.halt_reason.empty());
    CHECK(traj.max_abs_Pi > traj.min_abs_Pi);
}

TEST_CASE("time reversal") {
    const auto pr = profile(0.6);
    const auto pot = PotentialSpec::ml_oscillator(1.0);
    const auto fwd = integrate(pr, pot, {0.4, 0.9, 0.0}, 1e-3, 7.0);
    auto end = fwd.samples.back();
    end.p = -end.p;
    end.t = 0.0;
    const auto back = integrate(pr, pot, end, 1e-3, 7.0);
    CHECK(back.samples.back().x == Approx(0.4).epsilon(1e-9));
    CHECK(-back.samples.back().p == Approx(0.9).epsilon(1e-9));
}

TEST_CASE("well walls reflect in the deformed frame") {
    const auto pr = profile(3.0);
    const auto well = PotentialSpec::infinite_well(1.0);
    const auto traj = integrate(pr, well, {0.3, 2.0, 0.0}, 1e-3, 20.0);
    for (const auto& s : traj.samples) {
        CHECK(s.x >= 0.0);
        CHECK(s.x <= 1.0);
    }
    CHECK(traj.energy_drift < 1e-12);
    // Uniform motion in x_kappa: the time average reproduces the closed-form moments.
    const double Lk = deformed_coordinate(1.0, pr.kappa);
    const double period = 2.0 * Lk / 2.0;
    const auto whole = integrate(pr, well, {0.0, 2.0, 0.0}, period / 20000.0, 50.0 * period);
    const auto avg = time_average_moments(whole);
    const auto cf = well_classical_moments(1.0, 2.0, pr);
    CHECK(avg.mean_x == Approx(cf.mean_x).epsilon(1e-4));
    CHECK(avg.mean_x2 == Approx(cf.mean_x2).epsilon(1e-4));
}

TEST_CASE("integrate rejects bad input") {
    const auto pr = profile(0.5);
    CHECK_THROWS_AS(integrate(pr, PotentialSpec::free(), {0, 1, 0}, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate(pr, PotentialSpec::free(), {0, 1, 0}, 0.1, -1.0), DomainError);
    CHECK_THROWS_AS(integrate(pr, PotentialSpec::infinite_well(1.0), {2, 1, 0}, 0.1, 1.0),
                    DomainError);
}

TEST_CASE("classical densities are normalized") {
    for (double k : {0.0, 0.5, 3.0}) {
        const auto d = DeformationParameter(k);
        const double total =
            integrate([&](double x) { return well_classical_density(1.0, d, x); }, 0.0, 1.0).value;
        CHECK(total == Approx(1.0).epsilon(1e-10));
    }
    CHECK(well_classical_density(2.0, DeformationParameter(0.0), 0.3) == Approx(0.5));
    CHECK(well_classical_density(1.0, DeformationParameter(1.0), 1.5) == 0.0);

    const double A = 1.7;
    CHECK(oscillator_classical_density(A, 0.0) == Approx(1.0 / (kPi * A)));
    const double total = integrate(
        [&](double th) { return oscillator_classical_density(A, A * std::sin(th)) * A * std::cos(th); },
        -0.5 * kPi, 0.5 * kPi).value;
    CHECK(total == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(oscillator_classical_density(A, A), DomainError);
    CHECK(oscillator_classical_density(A, 2.0 * A) == 0.0);
}

TEST_CASE("classical well moments") {
    const auto m0 = well_classical_moments(1.0, 1.0, profile(0.0));
    CHECK(m0.mean_x == 0.5);
    CHECK(m0.mean_x2 == Approx(1.0 / 3.0));
    CHECK(m0.mean_p2 == 2.0);

    const auto m3 = well_classical_moments(1.0, 1.0, profile(3.0));
    CHECK(m3.mean_x == Approx(oracle::classical_well_x_kL3).epsilon(1e-12));
    CHECK(m3.mean_x2 == Approx(oracle::classical_well_x2_kL3).epsilon(1e-12));
    CHECK(m3.mean_p2 == Approx(oracle::classical_well_p2_kL3_E1).epsilon(1e-12));
    CHECK(m3.mean_x2 >= m3.mean_x * m3.mean_x);

    // Small kappa L stays on the undeformed values without cancellation noise.
    const auto tiny = well_classical_moments(1.0, 1.0, profile(1e-9));
    CHECK(tiny.mean_x == Approx(0.5).epsilon(1e-12));
    CHECK(tiny.mean_x2 == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("classical oscillator moments and virial split") {
    const auto pr = profile(0.5);
    const auto m = oscillator_classical_moments(1.0, 1.0, pr);
    CHECK(m.mean_x2 == Approx(1.0 / 1.5));
    const double E = 0.5;
    CHECK(m.mean_p2 == Approx(E * std::sqrt(1.0 - 2.0 * E * 0.25)));
    CHECK_THROWS_AS(oscillator_classical_moments(1.0, 1.0, profile(1.2)), DomainError);

    const auto v0 = virial_split(1.0, 1.0, profile(0.0));
    CHECK(v0.T_bar == Approx(0.25));
    CHECK(v0.V_bar == Approx(0.25));
    const auto v = virial_split(1.0, 1.0, pr);
    CHECK(v.V_bar / v.T_bar == Approx(1.0 / std::sqrt(0.75)).epsilon(1e-12));
    CHECK_THROWS_AS(virial_split(1.0, 1.0, profile(1.1)), DomainError);
}

TEST_CASE("trajectory averages reproduce the closed forms") {
    const auto pr = profile(0.5);
    const auto pot = PotentialSpec::ml_oscillator(1.0);
    const auto orbit = oscillator_orbit_from_amplitude(1.0, 1.0, pr);
    const double period = orbit.period();
    const auto traj = integrate(pr, pot, oscillator_orbit_state(orbit, pr, 0.0), period / 2000.0,
                                20.0 * period);
    const auto avg = time_average_moments(traj);
    const auto cf = oscillator_classical_moments(1.0, 1.0, pr);
    CHECK(avg.mean_x2 == Approx(cf.mean_x2).epsilon(1e-4));
    CHECK(avg.mean_p2 == Approx(cf.mean_p2).epsilon(1e-4));
    const auto split = trajectory_energy_split(traj, pr, pot);
    const auto exact = virial_split(1.0, 1.0, pr);
    CHECK(split.T_bar == Approx(exact.T_bar).epsilon(1e-4));
    CHECK(split.V_bar == Approx(exact.V_bar).epsilon(1e-4));
}

TEST_CASE("WKB levels and action") {
    const auto pr = profile(std::pow(20.0, -0.25));
    const auto lv = wkb_levels(1.0, pr, 3);
    CHECK(lv[0].energy == Approx(0.5 - 0.25 * (1.0 / std::sqrt(20.0)) / 2.0).epsilon(1e-14));
    for (const auto& l : lv) {
        CHECK(wkb_action(l.energy, 1.0, pr) == Approx((l.n + 0.5) / 2.0).epsilon(1e-6));
    }
    const auto flat = wkb_levels(1.0, profile(0.0), 4);
    for (const auto& l : flat) {
        CHECK(l.energy == Approx(l.n + 0.5));
        CHECK_FALSE(l.beyond_validity);
    }
    // Far enough up the ladder the quadratic term drives the level negative.
    const auto many = wkb_levels(1.0, profile(1.0), 4);
    CHECK(many.back().beyond_validity);
}
