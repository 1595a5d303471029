#include "kpdm/kappa_fourier.hpp"

#include "kpdm/errors.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kpdm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxPanels = 1 << 16;

int oscillation_panels(int base, double phase_span) {
    const double want = std::ceil(phase_span / kPi);
    return std::clamp(static_cast<int>(std::min(want, static_cast<double>(kMaxPanels))),
                      std::max(base, 1), kMaxPanels);
}

}  // namespace

std::complex<double> plane_wave(double k, DeformationParameter kappa, double x) {
    const double amp = 1.0 / (std::sqrt(2.0 * kPi) * std::sqrt(stretch(x, kappa)));
    return std::polar(amp, k * deformed_coordinate(x, kappa));
}

TransformResult forward_transform(const SpectrumFunction& g, DeformationParameter kappa, double x,
                                  double k_max, const TransformOptions& opt) {
    if (!(k_max > 0.0) || !std::isfinite(k_max)) {
        throw DomainError("forward_transform: k_max must be positive");
    }
    const double y = deformed_coordinate(x, kappa);
    auto integrand = [&](double k) { return g(k) * std::polar(1.0, k * y); };
    auto slab = [&](double a, double b, double scale) {
        QuadratureOptions q = opt.quad;
        // Shells only need to be resolved to a fraction of the truncation tolerance.
        q.abs_tol = std::max(q.abs_tol, 0.1 * opt.tail_tol * scale);
        // Allow for phase factors inside g as well as the kernel.
        q.panels = oscillation_panels(opt.quad.panels, (b - a) * (std::abs(y) + 1.0));
        return integrate_complex(integrand, a, b, q);
    };

    double K = k_max;
    std::complex<double> total = slab(-K, K, 0.0);
    double residual = 0.0;
    for (int d = 0; d < opt.max_doublings; ++d) {
        const double scale = std::max(std::abs(total), 1.0);
        const std::complex<double> shell = slab(-2.0 * K, -K, scale) + slab(K, 2.0 * K, scale);
        total += shell;
        K *= 2.0;
        residual = std::abs(shell);
        if (residual <= opt.tail_tol * std::max(std::abs(total), 1.0)) {
            const double scale = 1.0 / std::sqrt(stretch(x, kappa));
            return {total * scale, residual * scale, K};
        }
    }
    throw NumericError("forward_transform: truncation did not settle within " +
                           std::to_string(opt.max_doublings) + " window doublings",
                       residual);
}

std::complex<double> inverse_transform(const WaveFunction& psi, DeformationParameter kappa, double k,
                                       double x_lo, double x_hi, const QuadratureOptions& opt) {
    if (!(x_lo < x_hi)) {
        throw DomainError("inverse_transform: need x_lo < x_hi");
    }
    const double y_lo = deformed_coordinate(x_lo, kappa);
    const double y_hi = deformed_coordinate(x_hi, kappa);
    auto integrand = [&](double y) {
        const double x = restored_coordinate(y, kappa);
        return std::sqrt(stretch(x, kappa)) * psi(x) * std::polar(1.0, -k * y);
    };
    QuadratureOptions q = opt;
    q.panels = oscillation_panels(opt.panels, std::abs(k) * (y_hi - y_lo));
    return integrate_complex(integrand, y_lo, y_hi, q) / (2.0 * kPi);
}

SeriesApproximation sine_series(const WellSpec& spec, const std::function<double(double)>& f, int N,
                                const QuadratureOptions& opt) {
    if (N < 1) {
        throw DomainError("sine_series: N must be at least 1");
    }
    const double Lk = spec.L_kappa();
    const DeformationParameter kappa = spec.kappa();
    auto f_of_u = [&](double u) { return f(restored_coordinate(u * Lk, kappa)); };

    SeriesApproximation s;
    s.partial_sum_N = N;
    s.coefficients.resize(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        QuadratureOptions q = opt;
        q.panels = std::max(opt.panels, std::max(4, n));
        s.coefficients[static_cast<std::size_t>(n - 1)] =
            2.0 * integrate([&](double u) { return f_of_u(u) * std::sin(n * kPi * u); }, 0.0, 1.0, q)
                      .value;
    }

    QuadratureOptions q = opt;
    q.panels = std::max(opt.panels, std::max(8, 2 * N));
    s.norm_sq = Lk * integrate([&](double u) { const double v = f_of_u(u); return v * v; }, 0.0, 1.0, q)
                         .value;
    auto residual = [&](double u) {
        double fn = 0.0;
        for (int n = 1; n <= N; ++n) {
            fn += s.coefficients[static_cast<std::size_t>(n - 1)] * std::sin(n * kPi * u);
        }
        const double e = f_of_u(u) - fn;
        return e * e;
    };
    // f - f_N cancels terms of size |f|, so the residual is only resolvable
    // relative to the norm of f.
    q.abs_tol = std::max(q.abs_tol, opt.rel_tol * s.norm_sq / Lk);
    s.R_of_N = Lk * integrate(residual, 0.0, 1.0, q).value;
    return s;
}

double partial_sum(const WellSpec& spec, const SeriesApproximation& s, double x) {
    const double u = deformed_coordinate(x, spec.kappa()) / spec.L_kappa();
    double sum = 0.0;
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        sum += s.coefficients[i] * std::sin(static_cast<double>(i + 1) * kPi * u);
    }
    return sum;
}

double parseval_residual(const WellSpec& spec, const SeriesApproximation& s) {
    double sum = 0.0;
    for (double c : s.coefficients) {
        sum += c * c;
    }
    return std::abs(0.5 * spec.L_kappa() * sum - s.norm_sq);
}

double unit_partial_sum(const WellSpec& spec, int N, double x) {
    if (N < 0) {
        throw DomainError("unit_partial_sum: N must be non-negative");
    }
    const double u = deformed_coordinate(x, spec.kappa()) / spec.L_kappa();
    double sum = 0.0;
    for (int l = 0; l <= N; ++l) {
        const double m = 2.0 * l + 1.0;
        sum += std::sin(m * kPi * u) / m;
    }
    return 4.0 / kPi * sum;
}

double unit_series_error(const WellSpec& spec, int N) {
    if (N < 0) {
        throw DomainError("unit_series_error: N must be non-negative");
    }
    // 1 - (8/pi^2) sum_{l<=N} 1/(2l+1)^2 = (8/pi^2) sum_{l>N} 1/(2l+1)^2
    //                                   = (2/pi^2) trigamma(N + 3/2).
    return spec.L_kappa() * 2.0 / (kPi * kPi) * boost::math::trigamma(N + 1.5);
}

}  // namespace kpdm
