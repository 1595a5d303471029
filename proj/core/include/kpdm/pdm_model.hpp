#pragma once

// Physical model: the mass profile m(x) = m0 / (1 + kappa^2 x^2), the
// potentials, classical Hamiltonians, the point canonical transformation to
// the constant-mass frame, and the discretized two-parameter kinetic operator.
//
// Units are hbar = 1; m0 is kept explicit (default 1).

#include "kpdm/grid.hpp"
#include "kpdm/kappa_core.hpp"
#include "kpdm/tridiagonal.hpp"

#include <memory>
#include <vector>

namespace kpdm {

struct MassProfile {
    double m0 = 1.0;
    DeformationParameter kappa;

    /// Throws DomainError unless m0 is finite and positive.
    void validate() const;
};

double mass_at(const MassProfile& profile, double x);

enum class PotentialKind { infinite_well, ml_oscillator, free, tabulated };

const char* to_string(PotentialKind k);

class PotentialSpec {
public:
    /// Hard walls at 0 and L.
    static PotentialSpec infinite_well(double L);
    /// V = m0 omega0^2 x^2 / (2 (1 + kappa^2 x^2)).
    static PotentialSpec ml_oscillator(double omega0);
    static PotentialSpec free();
    /// Monotone cubic (PCHIP) through the samples; abscissae strictly increasing.
    static PotentialSpec tabulated(std::vector<double> x, std::vector<double> v);

    PotentialKind kind() const noexcept { return kind_; }
    double length() const noexcept { return length_; }
    double omega0() const noexcept { return omega0_; }

    /// Domain of V in the original coordinate.
    double domain_lo() const noexcept;
    double domain_hi() const noexcept;
    bool contains(double x) const noexcept;

    /// V(x). Throws DomainError outside the domain (the well interior is [0, L]).
    double value(double x, const MassProfile& profile) const;
    /// dV/dx.
    double derivative(double x, const MassProfile& profile) const;

private:
    struct Table;

    PotentialKind kind_ = PotentialKind::free;
    double length_ = 0.0;
    double omega0_ = 0.0;
    std::shared_ptr<const Table> table_;
};

/// The finite depth m0 omega0^2 / (2 kappa^2); +inf at kappa = 0.
double ml_well_depth(double omega0, const MassProfile& profile);

struct OrderingPair {
    double alpha = 0.25;
    double beta = 0.25;
};

struct PhaseState {
    double x = 0.0;
    double p = 0.0;
    double t = 0.0;
};

struct DeformedPhaseState {
    double x_kappa = 0.0;
    double Pi_kappa = 0.0;
    double t = 0.0;
};

/// p^2 / 2m(x) + V(x).
double hamiltonian_value(const MassProfile& profile, const PotentialSpec& potential,
                         const PhaseState& s);
/// Pi^2 / 2m0 + U(x_kappa); equal to hamiltonian_value under pct_forward.
double deformed_hamiltonian_value(const MassProfile& profile, const PotentialSpec& potential,
                                  const DeformedPhaseState& s);

DeformedPhaseState pct_forward(const PhaseState& s, DeformationParameter kappa);
PhaseState pct_inverse(const DeformedPhaseState& s, DeformationParameter kappa);

/// U(x_kappa) = V(x(x_kappa)). The well maps to a flat box on [0, L_kappa].
double deformed_potential(const PotentialSpec& potential, double x_kappa,
                          const MassProfile& profile);
/// dU/dx_kappa.
double deformed_potential_derivative(const PotentialSpec& potential, double x_kappa,
                                     const MassProfile& profile);

/// Symmetrized two-parameter kinetic operator on the interior nodes of a
/// uniform x grid with Dirichlet ends. Throws ConfigError for a grid in the
/// wrong frame or with fewer than GridSpec::kMinPoints nodes.
SymTridiagonal kinetic_matrix_vonroos(const MassProfile& profile, const OrderingPair& ordering,
                                      const GridSpec& grid);

}  // namespace kpdm
