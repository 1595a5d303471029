#include "doctest.h"
#include "oracles.hpp"

#include "kpdm/classical_sim.hpp"
#include "kpdm/errors.hpp"
#include "kpdm/quadrature.hpp"
#include "kpdm/well_analytic.hpp"

#include <cmath>
#include <numbers>

using namespace kpdm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

WellSpec well(double kL, double L = 1.0) { return WellSpec(L, DeformationParameter(kL / L)); }

QuadratureOptions panels(int n) { return {1e-12, 0.0, 20, 4 * n}; }

}  // namespace

TEST_CASE("well spec derived scales") {
    const auto w = well(1.0);
    CHECK(w.L_kappa() == Approx(std::asinh(1.0)));
    CHECK(w.L_kappa() < w.L());
    CHECK(well(0.0).L_kappa() == 1.0);
    CHECK(w.lambda() == Approx(std::asinh(1.0)));
    CHECK(w.k_n(2) == Approx(2.0 * kPi / std::asinh(1.0)));
    CHECK_THROWS_AS(WellSpec(0.0, DeformationParameter(1.0)), DomainError);
    CHECK_THROWS_AS(w.k_n(0), DomainError);
}

TEST_CASE("eigenfunctions vanish at the walls and reduce to the box states") {
    for (double kL : {0.0, 0.5, 3.0}) {
        const auto w = well(kL);
        for (int n = 1; n <= 4; ++n) {
            CHECK(eigenfunction(w, n, 0.0) == 0.0);
            CHECK(eigenfunction(w, n, 1.0) == 0.0);
            CHECK(eigenfunction(w, n, 1.3) == 0.0);
        }
    }
    const auto w0 = well(0.0);
    CHECK(eigenfunction(w0, 3, 0.3) == Approx(std::sqrt(2.0) * std::sin(3 * kPi * 0.3)));
    CHECK_THROWS_AS(eigenfunction(w0, 0, 0.3), DomainError);
}

TEST_CASE("eigenfunctions are orthonormal") {
    for (double kL : {0.5, 1.0, 3.0}) {
        const auto w = well(kL);
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n) {
            for (int m = n; m <= 6; ++m) {
                const double v = integrate([&](double x) {
                    return eigenfunction(w, n, x) * eigenfunction(w, m, x);
                }, 0.0, 1.0, panels(m)).value;
                worst = std::max(worst, std::abs(v - (n == m ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("energies") {
    CHECK(energy_ratio(well(0.0), 3) == 9.0);
    CHECK(energy_ratio(well(1.0), 1) == Approx(oracle::well_E1_ratio_kL1).epsilon(1e-14));
    CHECK(energy_ratio(well(3.0), 2) == Approx(oracle::well_E2_ratio_kL3).epsilon(1e-14));
    const auto w = well(1.0, 2.0);
    CHECK(energy(w, 2) == Approx(w.epsilon0() * energy_ratio(w, 2)).epsilon(1e-14));
    // Growing with |kappa| at fixed n.
    double prev = 0.0;
    for (double kL = 0.0; kL <= 5.0; kL += 0.25) {
        const double e = energy_ratio(well(kL), 2);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("position density is normalized") {
    const auto w = well(3.0);
    const double total =
        integrate([&](double x) { return position_density(w, 2, x); }, 0.0, 1.0, panels(2)).value;
    CHECK(total == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("momentum amplitude matches a quadrature of the transform") {
    const auto w = well(1.0);
    const auto g = momentum_amplitude(w, 2, 3.0);
    CHECK(g.real() == Approx(oracle::g_kL1_n2_k3_re).epsilon(1e-12));
    CHECK(g.imag() == Approx(oracle::g_kL1_n2_k3_im).epsilon(1e-12));
}

TEST_CASE("momentum amplitude is continuous through the removable points") {
    const auto w = well(1.0);
    for (int n : {1, 2, 3}) {
        for (double sign : {1.0, -1.0}) {
            const double k0 = sign * w.k_n(n);
            for (double d : {1e-3, 1e-5, 0.0}) {
                for (double s : {1.0, -1.0}) {
                    const double k = k0 + s * d * (1.0 + 1e-9) / w.L_kappa();
                    const auto inside = momentum_amplitude(w, n, k0 + s * 0.999e-3 / w.L_kappa());
                    const auto outside = momentum_amplitude(w, n, k0 + s * 1.001e-3 / w.L_kappa());
                    CHECK(std::abs(inside - outside) < 1e-5);
                    CHECK(std::isfinite(std::abs(momentum_amplitude(w, n, k))));
                }
            }
            CHECK(momentum_density(w, n, k0) == Approx(std::norm(momentum_amplitude(w, n, k0))));
        }
    }
}

TEST_CASE("momentum density integrates to 1/(2 pi)") {
    const auto w = well(1.0);
    for (int n : {1, 2}) {
        // The k^-4 tail beyond |k| = K contributes about 4 n^2 / (3 pi^2 L_kappa^3 K^3)... times
        // L_kappa; K = 4000 leaves far less than the tolerance.
        const double K = 4000.0;
        const double inner = integrate([&](double k) { return momentum_density(w, n, k); }, -K, K,
                                       {1e-12, 0.0, 20, 4000}).value;
        CHECK(inner == Approx(1.0 / (2.0 * kPi)).epsilon(1e-6));
    }
}

TEST_CASE("I_{j,l} integrals") {
    CHECK(sech_tanh_integral(well(1.0), 1, 1, 1) == Approx(oracle::I11_kL1_n1).epsilon(1e-10));
    CHECK(sech_tanh_integral(well(3.0), 1, 1, 1) == Approx(oracle::I11_kL3_n1).epsilon(1e-10));
    // sech^0 tanh^0 is the normalization.
    CHECK(sech_tanh_integral(well(2.0), 3, 0, 0) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(sech_tanh_integral(well(1.0), 1, -1, 0), DomainError);
}

TEST_CASE("closed-form moments against direct quadrature") {
    for (const auto& o : oracle::well_moments) {
        const auto w = well(o.kappa_L);
        const auto m = moments(w, o.n);
        CHECK(m.mean_x == Approx(o.x).epsilon(1e-12));
        CHECK(m.mean_x2 == Approx(o.x2).epsilon(1e-12));
        CHECK(m.mean_p2 == Approx(o.p2).epsilon(1e-10));
        CHECK(m.mean_p == 0.0);
        CHECK(m.dx == Approx(std::sqrt(o.x2 - o.x * o.x)).epsilon(1e-10));
    }
}

TEST_CASE("the four-integral <p^2> combination disagrees with direct quadrature") {
    // Evaluated faithfully, the combination reproduces its own reference value ...
    CHECK(p2_four_integral_form(well(1.0), 1) == Approx(oracle::four_integral_p2_kL1_n1).epsilon(1e-10));
    CHECK(p2_four_integral_form(well(3.0), 1) == Approx(oracle::four_integral_p2_kL3_n1).epsilon(1e-10));
    // ... which is not <p^2>.
    const double rel = std::abs(p2_four_integral_form(well(1.0), 1) / oracle::well_moments[0].p2 - 1.0);
    CHECK(rel > 1e-2);
    // Both agree at kappa = 0.
    CHECK(p2_four_integral_form(well(0.0), 2) == Approx(p2_exact(well(0.0), 2)).epsilon(1e-12));
}

TEST_CASE("undeformed moments") {
    const auto m = moments(well(0.0), 2);
    CHECK(m.mean_x == 0.5);
    CHECK(m.mean_x2 == Approx(1.0 / 3.0 - 1.0 / (8.0 * kPi * kPi)));
    CHECK(m.mean_p2 == Approx(4.0 * kPi * kPi));
    // Continuity into the series branch.
    const auto tiny = moments(well(1e-7), 2);
    CHECK(tiny.mean_x == Approx(0.5).epsilon(1e-12));
    CHECK(tiny.mean_x2 == Approx(m.mean_x2).epsilon(1e-12));
}

TEST_CASE("pseudo-momentum moments") {
    const auto w = well(3.0);
    const auto pm = pseudo_momentum_moments(w, 2);
    CHECK(pm.mean == 0.0);
    CHECK(pm.mean_sq == Approx(w.k_n(2) * w.k_n(2)));
    const auto m = moments(w, 2);
    CHECK(m.dk == Approx(w.k_n(2)));
}

TEST_CASE("quantum moments approach the classical ones at large n") {
    const auto w = well(3.0);
    const int n = 200;
    const auto q = moments(w, n, {1e-10, 0.0, 20, 400});
    const auto c = well_classical_moments(1.0, energy(w, n), {1.0, w.kappa()});
    CHECK(q.mean_x == Approx(c.mean_x).epsilon(1e-3));
    CHECK(q.mean_x2 == Approx(c.mean_x2).epsilon(1e-3));
    CHECK(q.mean_p2 == Approx(c.mean_p2).epsilon(1e-3));
}

TEST_CASE("Heisenberg bound over the kappa L range") {
    for (int n = 1; n <= 3; ++n) {
        for (double kL = 0.0; kL <= 3.0; kL += 0.1) {
            const auto m = moments(well(kL), n);
            CHECK(m.dx * m.dp >= 0.5);
            CHECK(m.dx * m.dk >= 0.5);
        }
    }
}
