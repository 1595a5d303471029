#include "kpdm/well_analytic.hpp"

#include "kpdm/errors.hpp"
#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kpdm {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |k L_kappa -+ n pi| the amplitude switches to its Taylor form.
constexpr double kRemovableWindow = 1e-3;

void require_level(int n, const char* who) {
    if (n < 1) {
        throw DomainError(std::string(who) + ": well levels start at n = 1");
    }
}

// (1 - exp(-i d)) / d to fourth order.
std::complex<double> phase_ratio(double d) {
    const double d2 = d * d;
    return {d / 2.0 - d * d2 / 24.0, 1.0 - d2 / 6.0 + d2 * d2 / 120.0};
}

double tanh_ratio(double lambda) {
    if (std::abs(lambda) < 1e-4) {
        const double l2 = lambda * lambda;
        return 1.0 - l2 / 3.0 + 2.0 * l2 * l2 / 15.0;
    }
    return std::tanh(lambda) / lambda;
}

QuadratureOptions with_panels(QuadratureOptions opt, int n) {
    if (opt.panels <= 1) {
        opt.panels = std::max(1, n);
    }
    return opt;
}

}  // namespace

WellSpec::WellSpec(double L, DeformationParameter kappa) : L_(L), kappa_(kappa), L_kappa_(0.0) {
    if (!std::isfinite(L) || !(L > 0.0)) {
        throw DomainError("WellSpec: L must be finite and positive");
    }
    L_kappa_ = deformed_coordinate(L, kappa);
}

double WellSpec::epsilon0() const noexcept {
    return kPi * kPi / (2.0 * L_ * L_);
}

double WellSpec::k_n(int n) const {
    require_level(n, "k_n");
    return n * kPi / L_kappa_;
}

double eigenfunction(const WellSpec& spec, int n, double x) {
    return modified_eigenfunction(spec, n, x) / std::sqrt(stretch(x, spec.kappa()));
}

double modified_eigenfunction(const WellSpec& spec, int n, double x) {
    require_level(n, "eigenfunction");
    if (x <= 0.0 || x >= spec.L()) {
        return 0.0;
    }
    const double u = deformed_coordinate(x, spec.kappa()) / spec.L_kappa();
    return std::sqrt(2.0 / spec.L_kappa()) * std::sin(n * kPi * u);
}

double energy(const WellSpec& spec, int n) {
    const double k = spec.k_n(n);
    return 0.5 * k * k;
}

double energy_ratio(const WellSpec& spec, int n) {
    require_level(n, "energy_ratio");
    const double r = spec.L() / spec.L_kappa();
    return r * r * n * n;
}

double position_density(const WellSpec& spec, int n, double x) {
    const double psi = eigenfunction(spec, n, x);
    return psi * psi;
}

std::complex<double> momentum_amplitude(const WellSpec& spec, int n, double k) {
    require_level(n, "momentum_amplitude");
    const double Lk = spec.L_kappa();
    const double theta = k * Lk;
    const double npi = n * kPi;
    const double pref = n * std::sqrt(0.5 * Lk);

    const double dp = theta - npi;
    if (std::abs(dp) < kRemovableWindow) {
        return pref * (-phase_ratio(dp) / (2.0 * npi + dp));
    }
    const double dm = theta + npi;
    if (std::abs(dm) < kRemovableWindow) {
        return pref * (phase_ratio(dm) / (2.0 * npi - dm));
    }
    const double sign = n % 2 == 1 ? 1.0 : -1.0;  // (-1)^{n+1}
    const std::complex<double> num = 1.0 + sign * std::polar(1.0, -theta);
    return pref * num / (npi * npi - theta * theta);
}

double momentum_density(const WellSpec& spec, int n, double k) {
    require_level(n, "momentum_density");
    const double Lk = spec.L_kappa();
    const double theta = k * Lk;
    const double npi = n * kPi;
    if (std::abs(std::abs(theta) - npi) < kRemovableWindow) {
        return std::norm(momentum_amplitude(spec, n, k));
    }
    const double den = theta * theta - npi * npi;
    const double cos_npi = n % 2 == 0 ? 1.0 : -1.0;
    return n * n * Lk * (1.0 - cos_npi * std::cos(theta)) / (den * den);
}

double sech_tanh_integral(const WellSpec& spec, int n, int j, int l, const QuadratureOptions& opt) {
    require_level(n, "sech_tanh_integral");
    if (j < 0 || l < 0) {
        throw DomainError("sech_tanh_integral: exponents must be non-negative");
    }
    const double lambda = spec.lambda();
    auto f = [&](double u) {
        const double t = lambda * u;
        const double sech2 = 1.0 / (std::cosh(t) * std::cosh(t));
        const double tanh2 = std::tanh(t) * std::tanh(t);
        const double s = std::sin(n * kPi * u);
        return 2.0 * std::pow(sech2, j) * std::pow(tanh2, l) * s * s;
    };
    return integrate(f, 0.0, 1.0, with_panels(opt, n)).value;
}

double p2_four_integral_form(const WellSpec& spec, int n, const QuadratureOptions& opt) {
    const double k = spec.k_n(n);
    const double k2 = spec.kappa().squared();
    const double i10 = sech_tanh_integral(spec, n, 1, 0, opt);
    if (k2 == 0.0) {
        return k * k * i10;
    }
    const double i11 = sech_tanh_integral(spec, n, 1, 1, opt);
    const double i30 = sech_tanh_integral(spec, n, 3, 0, opt);
    const double i31 = sech_tanh_integral(spec, n, 3, 1, opt);
    return k * k * i10 + k2 * (0.5 * i10 - 1.25 * i11 - i30 + 5.0 * i31);
}

double p2_exact(const WellSpec& spec, int n, const QuadratureOptions& opt) {
    const double k = spec.k_n(n);
    const double k2 = spec.kappa().squared();
    const double base = k * k * tanh_ratio(spec.lambda());
    if (k2 == 0.0) {
        return base;
    }
    return base + 0.25 * k2 * sech_tanh_integral(spec, n, 1, 1, opt);
}

MomentSet moments(const WellSpec& spec, int n, const QuadratureOptions& opt) {
    require_level(n, "moments");
    const double L = spec.L();
    const double t = spec.kappa_L();
    const double npi = n * kPi;
    MomentSet m;
    m.source = MomentSource::closed_form;
    if (t == 0.0) {
        m.mean_x = 0.5 * L;
        m.mean_x2 = L * L * (1.0 / 3.0 - 1.0 / (2.0 * npi * npi));
    } else {
        // Cancellation-free rewrites of the closed forms, a = arcsinh(kappa L).
        const double s = std::hypot(1.0, t);
        const double a = std::asinh(t);
        const double two_npi2 = 4.0 * npi * npi;
        m.mean_x = L * t * two_npi2 / ((s + 1.0) * a * (a * a + two_npi2));
        const double q = npi * npi / (a * a + npi * npi);
        const double r = a / t;
        m.mean_x2 = L * L * 0.5 * r * r * (detail::sinhc_excess(a) * q - 1.0 / (a * a + npi * npi));
    }
    m.mean_p = 0.0;
    m.mean_p2 = p2_exact(spec, n, opt);
    const double k = spec.k_n(n);
    m.dk = k;
    m.mean_Pi2 = k * k;
    m.finalize();
    return m;
}

PseudoMomentumMoments pseudo_momentum_moments(const WellSpec& spec, int n) {
    const double k = spec.k_n(n);
    return {0.0, k * k};
}

}  // namespace kpdm
