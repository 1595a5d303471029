#pragma once

// Closed-form quantum solution of the nonlinear (Mathews-Lakshmanan)
// oscillator through its Poschl-Teller image in the deformed coordinate.
// Units hbar = m0 = 1, so a0^2 = 1/omega0 and W_kappa = omega0^2 / 2 kappa^2.

#include "kpdm/kappa_core.hpp"
#include "kpdm/observables.hpp"

#include <vector>

namespace kpdm {

class OscillatorSpec {
public:
    /// DomainError unless omega0 is finite and positive.
    OscillatorSpec(double omega0, DeformationParameter kappa);
    /// The deformation with nu(nu + 1) = 1/(kappa a0)^4; nu = +inf gives kappa = 0.
    static OscillatorSpec from_nu(double nu, double omega0 = 1.0);

    double omega0() const noexcept { return omega0_; }
    DeformationParameter kappa() const noexcept { return kappa_; }
    double a0() const noexcept { return a0_; }
    double kappa_a0() const noexcept { return kappa_.scaled(a0_); }
    /// omega0 sqrt(1 + kappa^4 / 4 omega0^2).
    double omega_kappa() const noexcept { return omega_kappa_; }
    /// Poschl-Teller degree; +inf at kappa = 0.
    double nu() const noexcept { return nu_; }
    /// 1/z with z = 2 nu + 1; zero at kappa = 0.
    double inv_z() const noexcept { return inv_z_; }
    double z() const noexcept { return 1.0 / inv_z_; }
    /// Well depth W_kappa; +inf at kappa = 0.
    double W() const noexcept;
    /// Number of levels with n < nu; INT_MAX at kappa = 0.
    int bound_state_count() const noexcept;
    bool integer_nu() const noexcept;

private:
    double omega0_;
    DeformationParameter kappa_;
    double a0_;
    double omega_kappa_;
    double nu_;
    double inv_z_;
};

/// E_n = omega_kappa (n + 1/2) - (kappa^2/2)(n + 1/2)^2 - kappa^2/8.
/// DomainError for n < 0 or n >= nu, naming the bound-state count.
double energy(const OscillatorSpec& spec, int n);
std::vector<double> spectrum(const OscillatorSpec& spec, int n_max);
/// Bohr-Sommerfeld levels omega0 (n + 1/2) - kappa^2 (n + 1/2)^2 / 2.
double wkb_energy(const OscillatorSpec& spec, int n);
/// Energy measured from the Poschl-Teller asymptote, E - W_kappa.
double epsilon_shift(const OscillatorSpec& spec, double energy);

/// psi_n(x) = sqrt(kappa mu) Pbar_nu^mu(u) (1 + kappa^2 x^2)^{-1/4},
/// u = kappa x / sqrt(1 + kappa^2 x^2), mu = nu - n, with Pbar from
/// normalized_legendre. Hermite functions at kappa = 0.
/// UnsupportedError for non-integer nu.
double eigenfunction(const OscillatorSpec& spec, int n, double x);

/// <x^2> from the energy form; +inf when mu = nu - n <= 1 (the x^2 tail
/// of the state is not integrable there). <p^2> from the energy form.
MomentSet moments(const OscillatorSpec& spec, int n);

/// The explicit forms in (n, kappa a0, omega_kappa / omega0).
double x2_explicit(const OscillatorSpec& spec, int n);
double p2_explicit(const OscillatorSpec& spec, int n);

/// <V> = W_kappa (2n + 1) / z, from the Hellmann-Feynman theorem in omega0.
double potential_expectation(const OscillatorSpec& spec, int n);

/// Quantum amplitude a_{n,kappa}; +inf when the bracket reaches the well depth.
double quantum_amplitude(const OscillatorSpec& spec, int n);

struct EnergySplit {
    double T = 0.0;
    double V = 0.0;
    double amplitude = 0.0;
};

/// <T> from W_kappa (1/s)(omega0/omega_kappa - 1/s), s = sqrt(1 + kappa^2 a^2),
/// and <V> = E_n - <T>.
EnergySplit energy_split(const OscillatorSpec& spec, int n);

struct UncertaintyRow {
    double kappa_a0 = 0.0;
    int n = 0;
    double nu = 0.0;
    double dx = 0.0;
    double dp = 0.0;
    double product = 0.0;
    /// Set when the level is unbound or its <x^2> diverges; dx and product are NaN then.
    bool flagged = false;
};

/// Rows ordered by kappa_a0 then n.
std::vector<UncertaintyRow> uncertainty_scan(const std::vector<double>& kappa_a0,
                                             const std::vector<int>& levels, double omega0 = 1.0);

}  // namespace kpdm
