#include "doctest.h"
#include "oracles.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/kappa_core.hpp"

#include <cmath>
#include <random>

using namespace kpdm;
using doctest::Approx;

namespace {

DeformationParameter K(double k) { return DeformationParameter(k); }

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("deformation parameter rejects non-finite values") {
    CHECK_THROWS_AS(K(NAN), DomainError);
    CHECK_THROWS_AS(K(INFINITY), DomainError);
    CHECK(K(-2.0).magnitude() == 2.0);
    CHECK(K(0.0).is_zero());
}

TEST_CASE("kexp closed values") {
    CHECK(kexp(0.0, K(0.7)) == 1.0);
    CHECK(kexp(1.0, K(1.0)) == Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
    CHECK(kexp(0.7, K(1e-6)) == Approx(oracle::kexp_07_kappa1e6).epsilon(1e-14));
    CHECK(kexp(0.7, K(1e-6)) == Approx(std::exp(0.7)).epsilon(1e-10));
    CHECK(kexp(0.7, K(0.0)) == std::exp(0.7));
    CHECK_THROWS_AS(kexp(NAN, K(1.0)), DomainError);
}

TEST_CASE("klog closed values and domain") {
    CHECK(klog(1.0, K(0.4)) == 0.0);
    CHECK(klog(2.0, K(1.0)) == Approx(0.75).epsilon(1e-15));
    CHECK(klog(2.0, K(0.0)) == std::log(2.0));
    CHECK_THROWS_AS(klog(0.0, K(1.0)), DomainError);
    CHECK_THROWS_AS(klog(-1.0, K(0.0)), DomainError);
}

TEST_CASE("kadd and ksub") {
    CHECK(kadd(3.0, 4.0, K(1.0)) == Approx(oracle::kadd_3_4_kappa1).epsilon(1e-15));
    CHECK(kadd(2.5, 0.0, K(0.3)) == 2.5);
    CHECK(ksub(2.5, 2.5, K(0.3)) == 0.0);
    CHECK(kadd(2.5, 1.5, K(0.0)) == 4.0);
    for (double k : {0.0, 0.3, 1.0, 2.0}) {
        CHECK(klog(6.0, K(k)) ==
              Approx(kadd(klog(2.0, K(k)), klog(3.0, K(k)), K(k))).epsilon(1e-12));
    }
}

TEST_CASE("deformed number round trip on |u| <= 1e6") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> lg(-6.0, 6.0);
    std::uniform_real_distribution<double> kd(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double u = std::copysign(std::pow(10.0, lg(gen)), kd(gen));
        const auto k = K(kd(gen));
        const double back = restore(deform(u, k));
        CHECK(rel_close(back, u, 1e-14));
    }
}

TEST_CASE("series branch joins the closed form continuously") {
    const auto k = K(1.0);
    for (double t : {0.99e-4, 1.01e-4}) {
        CHECK(deformed_coordinate(t, k) == Approx(std::asinh(t)).epsilon(1e-15));
        CHECK(restored_coordinate(t, k) == Approx(std::sinh(t)).epsilon(1e-15));
    }
}

TEST_CASE("randomized algebra identities") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> ud(-5.0, 5.0);
    std::uniform_real_distribution<double> kd(-2.0, 2.0);
    int failures = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto k = K(kd(gen));
        const auto mk = K(-k.value());
        const double a = ud(gen);
        const double b = ud(gen);
        const double pa = std::exp(ud(gen) * 0.5);
        const double pb = std::exp(ud(gen) * 0.5);
        failures += !rel_close(klog(kexp(a, k), k), a, 1e-12);
        failures += !rel_close(kexp(a, k) * kexp(-a, k), 1.0, 1e-12);
        failures += !rel_close(kexp(a, k) * kexp(b, k), kexp(kadd(a, b, k), k), 1e-12);
        // The sum can cancel, so the tolerance follows the size of the terms.
        const double la = klog(pa, k);
        const double lb = klog(pb, k);
        failures += std::abs(klog(pa * pb, k) - kadd(la, lb, k)) >
                    1e-12 * std::max(std::abs(la) + std::abs(lb), 1e-300);
        failures += kadd(a, b, k) != kadd(b, a, k);
        failures += kexp(a, k) != kexp(a, mk);
        failures += klog(pa, k) != klog(pa, mk);
    }
    CHECK(failures == 0);
}

TEST_CASE("kexp is positive and increasing") {
    for (double k : {0.0, 0.5, 3.0}) {
        double prev = 0.0;
        for (double u = -20.0; u <= 20.0; u += 0.25) {
            const double v = kexp(u, K(k));
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("kappa derivatives") {
    // f(u) = u^3 at u = 0.8.
    const double u = 0.8;
    const Jet f{u * u * u, 3.0 * u * u, 6.0 * u};
    const auto k = K(0.6);
    CHECK(kderiv(f, u, k) == Approx(std::sqrt(1.0 + 0.36 * u * u) * f.d1).epsilon(1e-15));
    CHECK(kderiv(f, u, K(0.0)) == f.d1);
    CHECK(kderiv_dual(f, k) == Approx(f.d1 / std::sqrt(1.0 + 0.36 * f.value * f.value)));

    // Second derivative against a centered difference of D_kappa applied twice.
    // Five-point stencils keep the truncation error near 1e-12.
    const double h = 1e-3;
    auto five_point = [h](auto&& g, double x) {
        return (g(x - 2 * h) - 8 * g(x - h) + 8 * g(x + h) - g(x + 2 * h)) / (12.0 * h);
    };
    auto D = [&](double x) {
        const Jet g{x * x * x, 3.0 * x * x, 6.0 * x};
        return kderiv(g, x, k);
    };
    const double fd = std::sqrt(1.0 + 0.36 * u * u) * five_point(D, u);
    CHECK(kderiv2(f, u, k) == Approx(fd).epsilon(1e-8));

    auto Dd = [&](double x) {
        const Jet g{x * x * x, 3.0 * x * x, 6.0 * x};
        return kderiv_dual(g, k);
    };
    const double fd_dual = five_point(Dd, u) / std::sqrt(1.0 + 0.36 * f.value * f.value);
    CHECK(kderiv2_dual(f, k) == Approx(fd_dual).epsilon(1e-8));
}

TEST_CASE("D_kappa of kexp reproduces kexp") {
    // d/du exp(x_kappa(u)) scaled by the stretch gives back exp_kappa(u).
    for (double k : {0.0, 0.4, 1.5}) {
        for (double u : {-2.0, 0.1, 3.0}) {
            const double e = kexp(u, K(k));
            const Jet f{e, e / std::sqrt(1.0 + k * k * u * u), 0.0};
            CHECK(kderiv(f, u, K(k)) == Approx(e).epsilon(1e-14));
        }
    }
}
