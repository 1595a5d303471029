#include "doctest.h"

#include "kpdm/errors.hpp"
#include "kpdm/kappa_fourier.hpp"
#include "kpdm/well_analytic.hpp"

#include <cmath>
#include <numbers>

using namespace kpdm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

WellSpec well(double kL) { return WellSpec(1.0, DeformationParameter(kL)); }

}  // namespace

TEST_CASE("plane waves") {
    const auto k = DeformationParameter(0.7);
    const auto w = plane_wave(2.0, k, 1.3);
    CHECK(std::abs(w) == Approx(1.0 / std::sqrt(2.0 * kPi * std::hypot(1.0, 0.91))));
    CHECK(std::arg(w) == Approx(2.0 * std::asinh(0.91) / 0.7));
    CHECK(plane_wave(2.0, DeformationParameter(0.0), 1.3) ==
          std::polar(1.0 / std::sqrt(2.0 * kPi), 2.6));
}

TEST_CASE("unit function series: exact error and strict decrease") {
    const auto w = well(1.0);
    double prev = INFINITY;
    for (int N : {1, 2, 5, 50}) {
        const auto s = sine_series(w, [](double) { return 1.0; }, N);
        // Only odd harmonics contribute: N sine terms carry (N - 1) / 2 + 1 of them.
        CHECK(s.R_of_N == Approx(unit_series_error(w, (N - 1) / 2)).epsilon(1e-8));
        CHECK(s.norm_sq == Approx(w.L_kappa()).epsilon(1e-12));
        prev = s.R_of_N;
    }
    (void)prev;
    for (int l = 0; l < 60; ++l) {
        CHECK(unit_series_error(w, l + 1) < unit_series_error(w, l));
    }
    CHECK(unit_series_error(w, 0) == Approx(w.L_kappa() * (1.0 - 8.0 / (kPi * kPi))).epsilon(1e-13));
}

TEST_CASE("unit partial sum against the series coefficients") {
    const auto w = well(3.0);
    const auto s = sine_series(w, [](double) { return 1.0; }, 9);
    for (double x : {0.05, 0.3, 0.77}) {
        CHECK(partial_sum(w, s, x) == Approx(unit_partial_sum(w, 4, x)).epsilon(1e-10));
    }
    CHECK(s.coefficients[0] == Approx(4.0 / kPi).epsilon(1e-12));
    CHECK(std::abs(s.coefficients[1]) < 1e-14);
}

TEST_CASE("eigenmodes are reproduced exactly") {
    const auto w = well(1.0);
    const auto s = sine_series(w, [&](double x) { return modified_eigenfunction(w, 3, x); }, 6);
    CHECK(s.R_of_N < 1e-12);
    CHECK(s.coefficients[2] == Approx(std::sqrt(2.0 / w.L_kappa())).epsilon(1e-12));
}

TEST_CASE("deformed Parseval identity on smooth functions") {
    for (double kL : {0.0, 1.0, 3.0}) {
        const auto w = well(kL);
        const auto s = sine_series(w, [](double x) { return x * (1.0 - x); }, 40);
        CHECK(parseval_residual(w, s) <= 1e-8);
        // Bessel's equality holds for every N: the residual is exactly the tail.
        double sum = 0.0;
        for (double c : s.coefficients) {
            sum += c * c;
        }
        CHECK(0.5 * w.L_kappa() * sum + s.R_of_N == Approx(s.norm_sq).epsilon(1e-10));
    }
    CHECK_THROWS_AS(sine_series(well(1.0), [](double) { return 1.0; }, 0), DomainError);
}

TEST_CASE("transform round trip on a well eigenstate") {
    const auto w = well(1.0);
    const auto kappa = w.kappa();
    for (int n : {1, 2}) {
        auto psi = [&](double x) { return std::complex<double>(eigenfunction(w, n, x)); };
        for (double k : {-7.0, 0.5, 3.0, 11.0}) {
            const auto g = inverse_transform(psi, kappa, k, 0.0, 1.0);
            const auto exact = momentum_amplitude(w, n, k);
            CHECK(std::abs(g - exact) <= 1e-6 * std::abs(exact) + 1e-14);
        }
        for (double x : {0.2, 0.55}) {
            const auto r = forward_transform([&](double k) { return momentum_amplitude(w, n, k); },
                                             kappa, x, 100.0);
            CHECK(std::abs(r.value - psi(x)) <= 1e-6 * std::abs(psi(x)));
            CHECK(std::abs(r.value.imag()) < 1e-7);
        }
    }
}

TEST_CASE("Gaussian transform pair") {
    // A Gaussian in the flat coordinate: g(k) = exp(-k^2/2)/sqrt(2 pi) maps to
    // stretch^{-1/2} exp(-x_kappa^2 / 2).
    const auto kappa = DeformationParameter(0.6);
    auto g = [](double k) { return std::complex<double>(std::exp(-0.5 * k * k) / std::sqrt(2.0 * kPi)); };
    for (double x : {-1.5, 0.0, 2.0}) {
        const auto r = forward_transform(g, kappa, x, 5.0);
        const double y = deformed_coordinate(x, kappa);
        const double expect = std::exp(-0.5 * y * y) / std::sqrt(stretch(x, kappa));
        CHECK(r.value.real() == Approx(expect).epsilon(1e-9));
        const auto back = inverse_transform(
            [&](double xx) {
                const double yy = deformed_coordinate(xx, kappa);
                return std::complex<double>(std::exp(-0.5 * yy * yy) / std::sqrt(stretch(xx, kappa)));
            },
            kappa, x, restored_coordinate(-12.0, kappa), restored_coordinate(12.0, kappa));
        CHECK(std::abs(back - g(x)) < 1e-10);
    }
}

TEST_CASE("truncation that never settles is reported") {
    // A flat spectrum has no convergent transform.
    TransformOptions opt;
    opt.max_doublings = 3;
    CHECK_THROWS_AS(
        forward_transform([](double) { return std::complex<double>(1.0); }, DeformationParameter(0.5), 0.3, 10.0, opt),
        NumericError);
    CHECK_THROWS_AS(forward_transform([](double) { return std::complex<double>(0.0); },
                                      DeformationParameter(0.5), 0.3, -1.0),
                    DomainError);
}
