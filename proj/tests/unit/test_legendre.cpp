#include "doctest.h"
#include "oracles.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/legendre.hpp"
#include "kpdm/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <numbers>

using namespace kpdm;
using doctest::Approx;

TEST_CASE("normalized Legendre against frozen values") {
    for (const auto& v : oracle::legendre_values) {
        CHECK(normalized_legendre(v.l, v.m, v.u) == Approx(v.value).epsilon(1e-13));
    }
}

TEST_CASE("normalized Legendre against Boost without the Condon-Shortley phase") {
    for (int l = 0; l <= 12; ++l) {
        for (int m = 0; m <= l; ++m) {
            const double scale = std::sqrt(std::tgamma(l - m + 1.0) / std::tgamma(l + m + 1.0));
            const double cs = m % 2 == 0 ? 1.0 : -1.0;
            for (double u : {-0.95, -0.3, 0.0, 0.41, 0.99}) {
                const double ref = cs * scale * boost::math::legendre_p(l, m, u);
                CHECK(normalized_legendre(l, m, u) == Approx(ref).epsilon(1e-11).scale(1e-12));
            }
        }
    }
}

TEST_CASE("weighted orthogonality in the degree") {
    // int Pbar_l^m Pbar_k^m du = 2/(2l+1) delta_lk.
    const int m = 3;
    for (int l = m; l <= 8; ++l) {
        for (int k = m; k <= 8; ++k) {
            const double v = integrate([&](double u) {
                return normalized_legendre(l, m, u) * normalized_legendre(k, m, u);
            }, -1.0, 1.0, {1e-13, 0.0, 20, 4}).value;
            CHECK(v == Approx(l == k ? 2.0 / (2 * l + 1) : 0.0).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("boundary behaviour and domain") {
    CHECK(normalized_legendre(5, 2, 1.0) == 0.0);
    CHECK(normalized_legendre(5, 0, 1.0) == Approx(1.0));
    // Separate 1 - u^2 keeps accuracy where u rounds to one.
    const double tiny = 1e-30;
    CHECK(normalized_legendre(4, 4, 1.0, tiny) > 0.0);
    CHECK_THROWS_AS(normalized_legendre(2, 3, 0.1), DomainError);
    CHECK_THROWS_AS(normalized_legendre(2, -1, 0.1), DomainError);
    CHECK_THROWS_AS(normalized_legendre(2, 1, 1.5), DomainError);
}

TEST_CASE("Hermite functions") {
    for (const auto& v : oracle::hermite_values) {
        CHECK(hermite_function(v.n, v.x) == Approx(v.value).epsilon(1e-13));
    }
    for (int n = 0; n <= 6; ++n) {
        const double h = std::hermite(static_cast<unsigned>(n), 0.8);
        const double ref = h * std::exp(-0.32) /
                           std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi));
        CHECK(hermite_function(n, 0.8) == Approx(ref).epsilon(1e-12));
    }
    const double a0 = 0.7;
    const double norm = integrate([&](double x) { return std::pow(hermite_function(3, x, a0), 2); },
                                  -12.0, 12.0, {1e-13, 0.0, 20, 8}).value;
    CHECK(norm == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(hermite_function(-1, 0.0), DomainError);
}
