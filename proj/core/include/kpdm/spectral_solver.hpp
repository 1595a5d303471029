#pragma once

// Finite-difference eigensolver for the stationary problem, used as the
// independent check on every closed-form spectrum.
//
// Deformed frame: -(1/2m0) d^2/dx_kappa^2 + U(x_kappa) on a uniform x_kappa grid.
// Original frame: -(1/2m0)[(1+k^2x^2) Phi'' + k^2 x Phi'] + V Phi on a uniform
// x grid, made symmetric by the similarity transform with the d_kappa x weight
// w(x) = (1 + k^2 x^2)^(-1/2).

#include "kpdm/grid.hpp"
#include "kpdm/pdm_model.hpp"

#include <complex>
#include <vector>

namespace kpdm {

enum class NormConvention { dx, d_kappa_x };

const char* to_string(NormConvention c);

struct EigenSolution {
    /// Level index as reported: wells count from 1, everything else from 0.
    int n = 0;
    double energy = 0.0;
    Frame frame = Frame::x_kappa;
    /// Grid coordinates (x or x_kappa) including both Dirichlet ends.
    std::vector<double> coords;
    /// Samples at coords; zero at the ends.
    std::vector<double> psi;
    NormConvention norm = NormConvention::d_kappa_x;
    int nodes = 0;
};

/// Index of the lowest level: 1 for the infinite well, 0 otherwise.
int first_level_index(const PotentialSpec& potential);

/// Natural grid for a potential: the well interval (mapped to [0, L_kappa] in the
/// deformed frame) or a symmetric box of half-width `half_width` for the others.
GridSpec natural_grid(const PotentialSpec& potential, const MassProfile& profile, Frame frame,
                      int n_points, double half_width = 0.0);

/// Lowest n_levels eigenpairs in the deformed frame. Throws BoundStateError when
/// fewer levels are resolved (below the asymptotic value of U, or with fewer
/// than eight interior points per level).
std::vector<EigenSolution> solve_deformed_frame(const PotentialSpec& potential,
                                                const MassProfile& profile, const GridSpec& grid,
                                                int n_levels);

/// Lowest n_levels eigenpairs in the original frame; Phi is returned normalized
/// under d_kappa x.
std::vector<EigenSolution> solve_original_frame(const PotentialSpec& potential,
                                                const MassProfile& profile, const GridSpec& grid,
                                                int n_levels);

/// Lowest eigenvalues of the von Roos Hamiltonian for an arbitrary ordering pair.
std::vector<double> vonroos_energies(const PotentialSpec& potential, const MassProfile& profile,
                                     const OrderingPair& ordering, const GridSpec& grid,
                                     int n_levels);

/// Psi(x) = (1 + k^2 x^2)^(-1/4) Phi on x samples, normalized under dx.
EigenSolution to_standard(const EigenSolution& s, DeformationParameter kappa);

/// Number of sign changes in the interior samples, ignoring values below
/// `floor` times the largest magnitude.
int count_nodes(const std::vector<double>& psi, double floor = 1e-9);

/// Two-grid extrapolation (4 E_{h/2} - E_h) / 3 for a second-order scheme.
double richardson(double coarse, double fine);

/// Observed order log2((E_h - E_{h/2}) / (E_{h/2} - E_{h/4})).
double observed_order(double e_h, double e_h2, double e_h4);

struct ExtrapolatedSpectrum {
    std::vector<double> coarse;
    std::vector<double> fine;
    std::vector<double> energies;
};

/// Solves on `grid` and on its refinement and extrapolates level by level.
ExtrapolatedSpectrum solve_extrapolated(const PotentialSpec& potential, const MassProfile& profile,
                                        const GridSpec& grid, int n_levels);

/// Deformed-frame solve of the nonlinear oscillator with automatic truncation:
/// the half-width starts at 12/|kappa| and doubles until the top requested
/// level moves by less than 1e-9 (relative). `points_per_unit` fixes the
/// spacing so successive boxes are comparable.
struct TruncatedSpectrum {
    GridSpec grid;
    ExtrapolatedSpectrum spectrum;
    int bound_count = 0;
};
TruncatedSpectrum solve_oscillator_truncated(double omega0, const MassProfile& profile, int n_levels,
                                             double points_per_unit = 200.0);

/// Number of eigenvalues below the asymptotic value of U on this grid.
int bound_state_count(const PotentialSpec& potential, const MassProfile& profile,
                      const GridSpec& grid);

/// A complex wavefunction Psi(x) on the interior nodes of an x grid at time t.
struct WaveSnapshot {
    GridSpec grid;
    double t = 0.0;
    std::vector<std::complex<double>> psi;
};

struct ContinuityResidual {
    std::vector<double> x;
    /// d rho/dt + dJ/dx with rho = |Psi|^2 and J = Im(Psi* Psi') / m(x).
    std::vector<double> standard;
    /// d varrho/dt + D_kappa calJ with varrho = |Phi|^2 and calJ = J.
    std::vector<double> deformed;
    double max_standard = 0.0;
    double max_deformed = 0.0;
};

/// Residuals of both continuity equations between two snapshots on the same
/// grid: the time derivative is the forward difference, the current is taken
/// at the earlier snapshot. Throws ConfigError for mismatched grids.
ContinuityResidual continuity_residual(const WaveSnapshot& before, const WaveSnapshot& after,
                                       const MassProfile& profile);

/// One explicit Euler step Psi -> Psi - i dt H Psi with the (1/4, 1/4) Hamiltonian.
WaveSnapshot euler_step(const WaveSnapshot& s, const PotentialSpec& potential,
                        const MassProfile& profile, double dt);

}  // namespace kpdm
