#pragma once

// Deformed Fourier analysis: plane waves of the pseudo-momentum, the transform
// pair between x and wave number k, and sine series on the infinite well.
// All d_kappa x integrals are evaluated in the flat coordinate x_kappa.

#include "kpdm/kappa_core.hpp"
#include "kpdm/quadrature.hpp"
#include "kpdm/well_analytic.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace kpdm {

using SpectrumFunction = std::function<std::complex<double>(double)>;
using WaveFunction = std::function<std::complex<double>(double)>;

/// 1/sqrt(2 pi) (1 + k^2 x^2)^{-1/4} exp(i k x_kappa).
std::complex<double> plane_wave(double k, DeformationParameter kappa, double x);

struct TransformOptions {
    QuadratureOptions quad{1e-12, 0.0, 20, 64};
    /// Truncation residual tolerance, relative to max(|value|, 1).
    double tail_tol = 1e-9;
    /// Number of times the truncation window may double.
    int max_doublings = 12;
};

struct TransformResult {
    std::complex<double> value;
    /// Change of the value under the last window doubling.
    double residual = 0.0;
    /// Half-width of the final window.
    double window = 0.0;
};

/// psi(x) = (1 + k^2 x^2)^{-1/4} int g(k) exp(i k x_kappa) dk over |k| <= K,
/// doubling K from k_max until the value settles. NumericError otherwise.
TransformResult forward_transform(const SpectrumFunction& g, DeformationParameter kappa, double x,
                                  double k_max, const TransformOptions& opt = {});

/// g(k) = (1/2pi) int (1 + k^2 x^2)^{-1/4} psi(x) exp(-i k x_kappa) dx over
/// [x_lo, x_hi], integrated in x_kappa. The window is taken as the support.
std::complex<double> inverse_transform(const WaveFunction& psi, DeformationParameter kappa, double k,
                                       double x_lo, double x_hi,
                                       const QuadratureOptions& opt = {1e-12, 0.0, 20, 64});

struct SeriesApproximation {
    /// c_1 .. c_N.
    std::vector<double> coefficients;
    int partial_sum_N = 0;
    /// R(N) = int_0^L (f - f_N)^2 d_kappa x.
    double R_of_N = 0.0;
    /// int_0^L f^2 d_kappa x.
    double norm_sq = 0.0;
};

/// Sine series in sin(n pi x_kappa / L_kappa), n = 1..N. DomainError for N < 1.
SeriesApproximation sine_series(const WellSpec& spec, const std::function<double(double)>& f, int N,
                                const QuadratureOptions& opt = {1e-10, 1e-15, 20, 0});

double partial_sum(const WellSpec& spec, const SeriesApproximation& s, double x);

/// |sum c_n^2 L_kappa/2 - int f^2 d_kappa x|.
double parseval_residual(const WellSpec& spec, const SeriesApproximation& s);

/// Odd-harmonic expansion of f = 1 summed over l = 0..N:
/// (4/pi) sum sin((2l+1) pi x_kappa/L_kappa) / (2l+1).
double unit_partial_sum(const WellSpec& spec, int N, double x);

/// Mean-square error of unit_partial_sum, L_kappa [1 - (8/pi^2) sum 1/(2l+1)^2].
double unit_series_error(const WellSpec& spec, int N);

}  // namespace kpdm
