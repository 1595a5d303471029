#pragma once

// Closed-form stationary states of the position-dependent-mass particle in
// the infinite well [0, L]. Units hbar = m0 = 1. Levels are indexed from n = 1.

#include "kpdm/kappa_core.hpp"
#include "kpdm/observables.hpp"
#include "kpdm/quadrature.hpp"

#include <complex>

namespace kpdm {

class WellSpec {
public:
    /// Throws DomainError unless L is finite and positive.
    WellSpec(double L, DeformationParameter kappa);

    double L() const noexcept { return L_; }
    DeformationParameter kappa() const noexcept { return kappa_; }
    /// Box length in the deformed coordinate, arcsinh(kappa L)/kappa.
    double L_kappa() const noexcept { return L_kappa_; }
    /// pi^2 / 2L^2.
    double epsilon0() const noexcept;
    /// n pi / L_kappa.
    double k_n(int n) const;
    /// kappa L_kappa = arcsinh(kappa L).
    double lambda() const noexcept { return kappa_.magnitude() * L_kappa_; }
    /// kappa L.
    double kappa_L() const noexcept { return kappa_.scaled(L_); }

private:
    double L_;
    DeformationParameter kappa_;
    double L_kappa_;
};

/// psi_n(x); zero outside [0, L]. DomainError for n < 1.
double eigenfunction(const WellSpec& spec, int n, double x);
/// phi_n(x) = (1 + k^2 x^2)^{1/4} psi_n(x), normalized under d_kappa x.
double modified_eigenfunction(const WellSpec& spec, int n, double x);

double energy(const WellSpec& spec, int n);
/// E_n / epsilon0 = [kappa L / arcsinh(kappa L)]^2 n^2.
double energy_ratio(const WellSpec& spec, int n);

double position_density(const WellSpec& spec, int n, double x);

/// Momentum-space amplitude of phi_n, continuous through k L_kappa = +-n pi.
std::complex<double> momentum_amplitude(const WellSpec& spec, int n, double k);
double momentum_density(const WellSpec& spec, int n, double k);

/// 2 int_0^1 sech^{2j}(lambda u) tanh^{2l}(lambda u) sin^2(n pi u) du.
/// Throws NumericError when the quadrature misses `opt`.
double sech_tanh_integral(const WellSpec& spec, int n, int j, int l,
                          const QuadratureOptions& opt = {});

/// <p^2> from the four-integral combination with coefficients (1/2, -5/4, -1, 5).
double p2_four_integral_form(const WellSpec& spec, int n, const QuadratureOptions& opt = {});
/// <p^2> = k_n^2 tanh(lambda)/lambda + (kappa^2/4) I_{1,1}, obtained by integrating
/// |psi'|^2 by parts in the deformed coordinate.
double p2_exact(const WellSpec& spec, int n, const QuadratureOptions& opt = {});

/// <x> and <x^2> closed forms; <p^2> from p2_exact; dk = k_n; mean_Pi2 = k_n^2.
MomentSet moments(const WellSpec& spec, int n, const QuadratureOptions& opt = {});

struct PseudoMomentumMoments {
    double mean = 0.0;
    double mean_sq = 0.0;
};

PseudoMomentumMoments pseudo_momentum_moments(const WellSpec& spec, int n);

}  // namespace kpdm
