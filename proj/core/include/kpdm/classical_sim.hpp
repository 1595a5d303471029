#pragma once

// Classical dynamics of the position-dependent-mass particle. Trajectories are
// integrated in the deformed canonical pair (x_kappa, Pi_kappa), where the mass
// is constant, and mapped back to (x, p) sample by sample.

#include "kpdm/observables.hpp"
#include "kpdm/pdm_model.hpp"

#include <string>
#include <vector>

namespace kpdm {

enum class CoordinateFrame { standard, deformed };

struct Trajectory {
    std::vector<PhaseState> samples;
    std::vector<DeformedPhaseState> deformed_samples;
    CoordinateFrame coordinate_frame = CoordinateFrame::standard;
    /// max |H(t) - H(0)| / |H(0)| (absolute when H(0) = 0).
    double energy_drift = 0.0;
    /// Observed range of |Pi_kappa| over the run.
    double min_abs_Pi = 0.0;
    double max_abs_Pi = 0.0;
    /// Set when the particle left every representable region before T.
    bool halted = false;
    std::string halt_reason;
};

struct IntegrateOptions {
    /// Keep every stride-th step (the final state is always kept).
    int stride = 1;
    /// Integration halts once |x| exceeds this bound.
    double escape_bound = 1e150;
};

/// Sixth-order symplectic composition of leapfrog steps in the deformed frame.
/// Infinite-well walls reflect Pi_kappa at x_kappa in {0, L_kappa} at the exact
/// crossing time. Throws DomainError for dt <= 0, T <= 0 or s0 outside the potential.
Trajectory integrate(const MassProfile& profile, const PotentialSpec& potential,
                     const PhaseState& s0, double dt, double T, const IntegrateOptions& opts = {});

enum class OrbitRegime { bounded, separatrix, unbounded };

const char* to_string(OrbitRegime r);

struct OrbitParams {
    double A0 = 0.0;
    double energy = 0.0;
    double A_kappa = 0.0;      // NaN unless bounded
    double Omega_kappa = 0.0;  // NaN unless bounded
    double W_kappa = 0.0;
    OrbitRegime regime = OrbitRegime::bounded;

    bool bounded() const noexcept { return regime == OrbitRegime::bounded; }
    double period() const;
};

/// Orbit data of the nonlinear oscillator from the undeformed amplitude A0
/// (A0^2 = 2E / m0 omega0^2).
OrbitParams oscillator_orbit_from_amplitude(double A0, double omega0, const MassProfile& profile);
OrbitParams oscillator_orbit_from_energy(double energy, double omega0, const MassProfile& profile);

/// Analytic bounded orbit x(t) = A_kappa cos(Omega_kappa t + delta0) and its momentum.
PhaseState oscillator_orbit_state(const OrbitParams& orbit, const MassProfile& profile, double t,
                                  double delta0 = 0.0);

/// Free particle x(t) = ln_kappa(exp(v0 t)) starting at the origin.
double free_trajectory(double v0, DeformationParameter kappa, double t);

/// Normalized classical density on [0, L]; zero outside.
double well_classical_density(double L, DeformationParameter kappa, double x);
/// 1 / (pi sqrt(A^2 - x^2)) for |x| < A, zero for |x| > A; DomainError at |x| = A.
double oscillator_classical_density(double A_kappa, double x);

struct ClassicalMoments {
    double mean_x = 0.0;
    double mean_x2 = 0.0;
    double mean_p = 0.0;
    double mean_p2 = 0.0;
    MomentSource source = MomentSource::closed_form;
};

/// Closed forms for the well at energy E.
ClassicalMoments well_classical_moments(double L, double energy, const MassProfile& profile);
/// Closed forms for the oscillator; DomainError unless the orbit is bounded.
ClassicalMoments oscillator_classical_moments(double A0, double omega0, const MassProfile& profile);

/// Time averages over the stored samples. The run must span whole periods;
/// the last sample is dropped so the rectangle rule stays periodic.
ClassicalMoments time_average_moments(const Trajectory& trajectory);

struct WkbLevel {
    int n = 0;
    double energy = 0.0;
    /// Negative energy or energy above the well depth.
    bool beyond_validity = false;
};

std::vector<WkbLevel> wkb_levels(double omega0, const MassProfile& profile, int n_max);

/// (1/2pi) times the turning-point integral of p(x) at energy E, evaluated by
/// quadrature with x = A_kappa sin(theta). Bohr-Sommerfeld gives (n + 1/2) / 2.
double wkb_action(double energy, double omega0, const MassProfile& profile);

struct VirialSplit {
    double T_bar = 0.0;
    double V_bar = 0.0;
    double energy = 0.0;
};

/// Orbit averages of kinetic and potential energy. DomainError when unbounded.
VirialSplit virial_split(double A0, double omega0, const MassProfile& profile);

/// The same averages taken along a stored trajectory.
VirialSplit trajectory_energy_split(const Trajectory& trajectory, const MassProfile& profile,
                                    const PotentialSpec& potential);

}  // namespace kpdm
