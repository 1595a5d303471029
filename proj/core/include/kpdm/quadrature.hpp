#pragma once

// Adaptive Gauss-Kronrod quadrature shared by the analytic modules and the
// cross-check oracles. Backed by Boost.Math's 15-point Gauss-Kronrod rule;
// the interval is optionally pre-split into equal panels so oscillatory
// integrands (sin^2(n pi u) for large n) start from a resolved partition.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace kpdm {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    unsigned max_levels = 20;
    int panels = 1;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

namespace detail {
// Throws NumericError when the estimate misses the tolerance.
void check_quadrature(const QuadratureResult& r, const QuadratureOptions& opt, double a, double b);
}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    const int panels = opt.panels < 1 ? 1 : opt.panels;
    const double width = (b - a) / panels;
    auto panel_lo = [&](int i) { return a + width * i; };
    auto panel_hi = [&](int i) { return (i + 1 == panels) ? b : a + width * (i + 1); };

    // A non-adaptive sweep fixes the global accuracy target, so panels whose
    // contribution nearly cancels are not refined to a pointless relative accuracy.
    std::vector<double> coarse(static_cast<std::size_t>(panels));
    std::vector<double> coarse_err(static_cast<std::size_t>(panels));
    std::vector<double> coarse_l1(static_cast<std::size_t>(panels));
    double l1_guess = 0.0;
    for (int i = 0; i < panels; ++i) {
        const auto k = static_cast<std::size_t>(i);
        coarse[k] = Rule::integrate(f, panel_lo(i), panel_hi(i), 0, 0.0, &coarse_err[k], &coarse_l1[k]);
        l1_guess += coarse_l1[k];
    }
    const double target = std::max(opt.abs_tol, opt.rel_tol * l1_guess) / panels;

    // Bisection depth grows until the panel meets the target. Oscillatory
    // integrands hit a roundoff floor in the error estimate; deeper levels then
    // only add noise, so the search stops once the estimate no longer improves.
    QuadratureResult total;
    for (int i = 0; i < panels; ++i) {
        const auto k = static_cast<std::size_t>(i);
        double best = coarse[k];
        double best_err = coarse_err[k];
        double best_l1 = coarse_l1[k];
        const double est = std::abs(coarse[k]);
        // Boost accepts each sub-panel against its own share, so the summed
        // estimate can land just above the request; ask for a margin.
        const double tol = 0.25 * (est > 0.0 ? std::max(opt.rel_tol, target / est) : 1.0);
        for (unsigned depth = 2; best_err > target && opt.max_levels > 0; depth *= 2) {
            depth = std::min(depth, opt.max_levels);
            double err = 0.0;
            double l1 = 0.0;
            const double v = Rule::integrate(f, panel_lo(i), panel_hi(i), depth, tol, &err, &l1);
            if (err >= best_err) {
                break;
            }
            best = v;
            best_err = err;
            best_l1 = l1;
            if (depth == opt.max_levels) {
                break;
            }
        }
        total.value += best;
        total.error += best_err;
        total.l1 += best_l1;
    }
    detail::check_quadrature(total, opt, a, b);
    return total;
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b,
                                       const QuadratureOptions& opt = {}) {
    const auto re = integrate([&](double t) { return std::real(f(t)); }, a, b, opt);
    const auto im = integrate([&](double t) { return std::imag(f(t)); }, a, b, opt);
    return {re.value, im.value};
}

}  // namespace kpdm
