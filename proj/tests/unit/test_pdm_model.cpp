#include "doctest.h"

#include "kpdm/errors.hpp"
#include "kpdm/pdm_model.hpp"
#include "kpdm/spectral_solver.hpp"
#include "kpdm/well_analytic.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace kpdm;
using doctest::Approx;

namespace {

MassProfile profile(double kappa, double m0 = 1.0) { return {m0, DeformationParameter(kappa)}; }

}  // namespace

TEST_CASE("mass profile") {
    CHECK(mass_at(profile(2.0), 0.0) == 1.0);
    CHECK(mass_at(profile(0.0, 3.0), 17.0) == 3.0);
    CHECK(mass_at(profile(2.0), 0.5) == Approx(0.5));
    CHECK(mass_at(profile(-2.0), -0.5) == mass_at(profile(2.0), 0.5));
    CHECK_THROWS_AS(profile(1.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(profile(1.0, -1.0).validate(), DomainError);
}

TEST_CASE("potential specs validate their parameters") {
    CHECK_THROWS_AS(PotentialSpec::infinite_well(0.0), DomainError);
    CHECK_THROWS_AS(PotentialSpec::ml_oscillator(-1.0), DomainError);
    CHECK_THROWS_AS(PotentialSpec::tabulated({0.0, 1.0, 0.5}, {0.0, 1.0, 2.0}), DomainError);
    const auto well = PotentialSpec::infinite_well(2.0);
    CHECK(well.contains(1.0));
    CHECK_FALSE(well.contains(2.5));
    CHECK_THROWS_AS(well.value(-0.1, profile(1.0)), DomainError);
}

TEST_CASE("Hamiltonian values") {
    const auto pr = profile(0.7);
    const auto osc = PotentialSpec::ml_oscillator(1.3);
    CHECK(hamiltonian_value(pr, osc, {0.0, 2.0, 0.0}) == Approx(2.0));
    const double x = 1.7;
    const double expect = 1.69 * x * x / (2.0 * (1.0 + 0.49 * x * x));
    CHECK(hamiltonian_value(pr, osc, {x, 0.0, 0.0}) == Approx(expect).epsilon(1e-15));
    CHECK(hamiltonian_value(pr, osc, {x, 0.0, 0.0}) < ml_well_depth(1.3, pr));
    CHECK(std::isinf(ml_well_depth(1.0, profile(0.0))));
}

TEST_CASE("point canonical transformation") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(-4.0, 4.0);
    std::uniform_real_distribution<double> kd(0.0, 5.0);
    const auto osc = PotentialSpec::ml_oscillator(1.0);
    for (int i = 0; i < 500; ++i) {
        const auto k = DeformationParameter(kd(gen));
        const PhaseState s{d(gen), d(gen), 0.0};
        const auto back = pct_inverse(pct_forward(s, k), k);
        CHECK(back.x == Approx(s.x).epsilon(1e-13));
        CHECK(back.p == Approx(s.p).epsilon(1e-13));

        const MassProfile pr{1.0, k};
        CHECK(deformed_hamiltonian_value(pr, osc, pct_forward(s, k)) ==
              Approx(hamiltonian_value(pr, osc, s)).epsilon(1e-12));

        // Poisson bracket {x_kappa, Pi_kappa} by central differences.
        const double h = 1e-5;
        auto X = [&](double x, double p) { return pct_forward({x, p, 0.0}, k).x_kappa; };
        auto P = [&](double x, double p) { return pct_forward({x, p, 0.0}, k).Pi_kappa; };
        const double dXdx = (X(s.x + h, s.p) - X(s.x - h, s.p)) / (2 * h);
        const double dXdp = (X(s.x, s.p + h) - X(s.x, s.p - h)) / (2 * h);
        const double dPdx = (P(s.x + h, s.p) - P(s.x - h, s.p)) / (2 * h);
        const double dPdp = (P(s.x, s.p + h) - P(s.x, s.p - h)) / (2 * h);
        CHECK(dXdx * dPdp - dXdp * dPdx == Approx(1.0).epsilon(1e-8));
    }
    const auto id = pct_forward({1.5, -2.0, 0.3}, DeformationParameter(0.0));
    CHECK(id.x_kappa == 1.5);
    CHECK(id.Pi_kappa == -2.0);
}

TEST_CASE("deformed potential") {
    const auto pr = profile(0.8);
    const auto osc = PotentialSpec::ml_oscillator(1.2);
    const auto well = PotentialSpec::infinite_well(1.0);
    CHECK(deformed_potential(osc, 0.0, pr) == 0.0);
    CHECK(deformed_potential(well, 0.0, pr) == 0.0);
    CHECK(deformed_potential(osc, 60.0, pr) == Approx(ml_well_depth(1.2, pr)).epsilon(1e-14));
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> d(-30.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double x = d(gen);
        CHECK(deformed_potential(osc, deformed_coordinate(x, pr.kappa), pr) ==
              Approx(osc.value(x, pr)).epsilon(1e-12));
    }
    const double Lk = deformed_coordinate(1.0, pr.kappa);
    CHECK(deformed_potential(well, 0.5 * Lk, pr) == 0.0);
    CHECK_THROWS_AS(deformed_potential(well, 1.01 * Lk, pr), DomainError);

    // dU/dx_kappa against a centered difference.
    const double y = 0.9;
    const double h = 1e-5;
    const double fd =
        (deformed_potential(osc, y + h, pr) - deformed_potential(osc, y - h, pr)) / (2 * h);
    CHECK(deformed_potential_derivative(osc, y, pr) == Approx(fd).epsilon(1e-8));
}

TEST_CASE("tabulated potential is monotone between samples") {
    const auto tab = PotentialSpec::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 1.0, 4.0});
    const auto pr = profile(0.0);
    // A monotone interpolant cannot overshoot on the flat segment.
    for (double x = 1.0; x <= 2.0; x += 0.05) {
        CHECK(tab.value(x, pr) == Approx(1.0));
    }
    CHECK_THROWS_AS(tab.value(3.5, pr), DomainError);
}

TEST_CASE("von Roos kinetic matrix") {
    const auto pr = profile(1.0);
    const GridSpec grid{Frame::x, 0.0, 1.0, 401};
    const auto t = kinetic_matrix_vonroos(pr, {}, grid);
    CHECK(t.size() == 399u);

    CHECK_THROWS_AS(kinetic_matrix_vonroos(pr, {}, GridSpec{Frame::x, 0.0, 1.0, 10}), ConfigError);
    CHECK_THROWS_AS(kinetic_matrix_vonroos(pr, {}, GridSpec{Frame::x_kappa, 0.0, 1.0, 100}),
                    ConfigError);

    // Constant mass: every ordering is the plain second difference.
    const auto flat = kinetic_matrix_vonroos(profile(0.0), {0.1, 0.7}, grid);
    const double h = grid.spacing();
    CHECK(flat.diag[7] == Approx(1.0 / (h * h)));
    CHECK(flat.off[7] == Approx(-0.5 / (h * h)));
}

TEST_CASE("von Roos ground level matches the closed form at kappa L = 1") {
    const auto pr = profile(1.0);
    const auto well = PotentialSpec::infinite_well(1.0);
    const WellSpec ws(1.0, pr.kappa);
    const GridSpec grid{Frame::x, 0.0, 1.0, 2000};
    const auto e = vonroos_energies(well, pr, {}, grid, 1);
    CHECK(e[0] == Approx(energy(ws, 1)).epsilon(1e-4));

    // The (0, 0) ordering gives a different, grid-converged ground energy.
    const auto e00 = vonroos_energies(well, pr, {0.0, 0.0}, grid, 1);
    const auto e00_fine = vonroos_energies(well, pr, {0.0, 0.0}, grid.refined(), 1);
    const double gap = e00_fine[0] - energy(ws, 1);
    CHECK(std::abs(gap) > 1e-2);
    CHECK(std::abs(e00_fine[0] - e00[0]) < 1e-3 * std::abs(gap));
}
