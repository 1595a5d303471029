#include "kpdm/spectral_solver.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kpdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Levels need at least this many interior points each to count as resolved.
constexpr int kPointsPerLevel = 8;

double asymptote(const PotentialSpec& potential, const MassProfile& profile) {
    if (potential.kind() == PotentialKind::ml_oscillator) {
        return ml_well_depth(potential.omega0(), profile);
    }
    return kInf;
}

SymTridiagonal deformed_matrix(const PotentialSpec& potential, const MassProfile& profile,
                               const GridSpec& grid) {
    const double h = grid.spacing();
    const double k = 1.0 / (profile.m0 * h * h);
    const int n = grid.interior();
    SymTridiagonal t;
    t.diag.resize(static_cast<std::size_t>(n));
    t.off.assign(static_cast<std::size_t>(std::max(n - 1, 0)), -0.5 * k);
    for (int i = 0; i < n; ++i) {
        t.diag[static_cast<std::size_t>(i)] = k + deformed_potential(potential, grid.node(i + 1), profile);
    }
    return t;
}

// Symmetrized original-frame operator S = W^{-1/2} K W^{-1/2}; also returns w at the nodes.
SymTridiagonal original_matrix(const PotentialSpec& potential, const MassProfile& profile,
                               const GridSpec& grid, std::vector<double>& weight) {
    const DeformationParameter kappa = profile.kappa;
    const double h = grid.spacing();
    const double k = 1.0 / (profile.m0 * h * h);
    const int n = grid.interior();
    weight.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        weight[static_cast<std::size_t>(i)] = 1.0 / stretch(grid.node(i + 1), kappa);
    }
    SymTridiagonal t;
    t.diag.resize(static_cast<std::size_t>(n));
    t.off.resize(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (int i = 0; i < n; ++i) {
        const double x = grid.node(i + 1);
        const double pp = stretch(x + 0.5 * h, kappa);
        const double pm = stretch(x - 0.5 * h, kappa);
        const double w = weight[static_cast<std::size_t>(i)];
        t.diag[static_cast<std::size_t>(i)] = 0.5 * k * (pp + pm) / w + potential.value(x, profile);
        if (i + 1 < n) {
            const double wn = weight[static_cast<std::size_t>(i + 1)];
            t.off[static_cast<std::size_t>(i)] = -0.5 * k * pp / std::sqrt(w * wn);
        }
    }
    return t;
}

void check_grid(const GridSpec& grid, Frame expected, const char* who) {
    grid.validate();
    if (grid.frame != expected) {
        throw ConfigError(std::string(who) + ": grid is in the " + to_string(grid.frame) +
                          " frame, expected " + to_string(expected));
    }
}

int resolved_levels(const SymTridiagonal& t, double limit) {
    const int by_resolution = static_cast<int>(t.size()) / kPointsPerLevel;
    const int below = std::isinf(limit) ? static_cast<int>(t.size()) : count_below(t, limit);
    return std::min(by_resolution, below);
}

void require_levels(int requested, int available, const char* who) {
    if (requested < 1) {
        throw DomainError(std::string(who) + ": n_levels must be at least 1");
    }
    if (requested > available) {
        throw BoundStateError(std::string(who) + ": requested " + std::to_string(requested) +
                                  " levels but only " + std::to_string(available) +
                                  " are resolved bound states on this grid",
                              available);
    }
}

// Unit vector v (sum v^2 h = 1 after scaling) -> samples with both ends,
// sign fixed so the first significant lobe is positive.
std::vector<double> embed(const std::vector<double>& v, double h) {
    std::vector<double> out(v.size() + 2, 0.0);
    double vmax = 0.0;
    for (double x : v) {
        vmax = std::max(vmax, std::abs(x));
    }
    double sign = 1.0;
    for (double x : v) {
        if (std::abs(x) > 1e-3 * vmax) {
            sign = x > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    const double scale = sign / std::sqrt(h);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i + 1] = scale * v[i];
    }
    return out;
}

std::vector<double> all_nodes(const GridSpec& grid) {
    std::vector<double> out(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        out[static_cast<std::size_t>(i)] = grid.node(i);
    }
    return out;
}

void assert_nodes(const EigenSolution& s, int level) {
    if (s.nodes != level) {
        throw NumericError("eigensolver: level " + std::to_string(level) + " has " +
                               std::to_string(s.nodes) + " nodes",
                           static_cast<double>(s.nodes));
    }
}

}  // namespace

const char* to_string(NormConvention c) {
    return c == NormConvention::dx ? "dx" : "d_kappa_x";
}

int first_level_index(const PotentialSpec& potential) {
    return potential.kind() == PotentialKind::infinite_well ? 1 : 0;
}

GridSpec natural_grid(const PotentialSpec& potential, const MassProfile& profile, Frame frame,
                      int n_points, double half_width) {
    if (potential.kind() == PotentialKind::infinite_well) {
        const double hi = frame == Frame::x ? potential.length()
                                            : deformed_coordinate(potential.length(), profile.kappa);
        return GridSpec{frame, 0.0, hi, n_points};
    }
    if (potential.kind() == PotentialKind::tabulated) {
        const double lo = potential.domain_lo();
        const double hi = potential.domain_hi();
        if (frame == Frame::x) {
            return GridSpec{frame, lo, hi, n_points};
        }
        return GridSpec{frame, deformed_coordinate(lo, profile.kappa),
                        deformed_coordinate(hi, profile.kappa), n_points};
    }
    if (!(half_width > 0.0)) {
        throw ConfigError("natural_grid: a positive half-width is required for unbounded potentials");
    }
    return GridSpec{frame, -half_width, half_width, n_points};
}

std::vector<EigenSolution> solve_deformed_frame(const PotentialSpec& potential,
                                                const MassProfile& profile, const GridSpec& grid,
                                                int n_levels) {
    check_grid(grid, Frame::x_kappa, "solve_deformed_frame");
    profile.validate();
    const SymTridiagonal t = deformed_matrix(potential, profile, grid);
    require_levels(n_levels, resolved_levels(t, asymptote(potential, profile)),
                   "solve_deformed_frame");

    const TridiagonalEigen eig = lowest_eigenpairs(t, n_levels);
    const int offset = first_level_index(potential);
    std::vector<EigenSolution> out;
    out.reserve(static_cast<std::size_t>(n_levels));
    for (int j = 0; j < n_levels; ++j) {
        EigenSolution s;
        s.n = j + offset;
        s.energy = eig.values[static_cast<std::size_t>(j)];
        s.frame = Frame::x_kappa;
        s.coords = all_nodes(grid);
        s.psi = embed(eig.vectors[static_cast<std::size_t>(j)], grid.spacing());
        s.norm = NormConvention::d_kappa_x;
        s.nodes = count_nodes(s.psi);
        assert_nodes(s, j);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<EigenSolution> solve_original_frame(const PotentialSpec& potential,
                                                const MassProfile& profile, const GridSpec& grid,
                                                int n_levels) {
    check_grid(grid, Frame::x, "solve_original_frame");
    profile.validate();
    std::vector<double> weight;
    const SymTridiagonal t = original_matrix(potential, profile, grid, weight);
    require_levels(n_levels, resolved_levels(t, asymptote(potential, profile)),
                   "solve_original_frame");

    const TridiagonalEigen eig = lowest_eigenpairs(t, n_levels);
    const int offset = first_level_index(potential);
    std::vector<EigenSolution> out;
    out.reserve(static_cast<std::size_t>(n_levels));
    for (int j = 0; j < n_levels; ++j) {
        EigenSolution s;
        s.n = j + offset;
        s.energy = eig.values[static_cast<std::size_t>(j)];
        s.frame = Frame::x;
        s.coords = all_nodes(grid);
        s.psi = embed(eig.vectors[static_cast<std::size_t>(j)], grid.spacing());
        // v = W^{1/2} Phi.
        for (std::size_t i = 0; i < weight.size(); ++i) {
            s.psi[i + 1] /= std::sqrt(weight[i]);
        }
        s.norm = NormConvention::d_kappa_x;
        s.nodes = count_nodes(s.psi);
        assert_nodes(s, j);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<double> vonroos_energies(const PotentialSpec& potential, const MassProfile& profile,
                                     const OrderingPair& ordering, const GridSpec& grid,
                                     int n_levels) {
    SymTridiagonal t = kinetic_matrix_vonroos(profile, ordering, grid);
    for (int i = 0; i < grid.interior(); ++i) {
        t.diag[static_cast<std::size_t>(i)] += potential.value(grid.node(i + 1), profile);
    }
    require_levels(n_levels, resolved_levels(t, asymptote(potential, profile)), "vonroos_energies");
    return eigenvalues_by_index(t, 0, n_levels);
}

EigenSolution to_standard(const EigenSolution& s, DeformationParameter kappa) {
    EigenSolution out = s;
    out.norm = NormConvention::dx;
    out.frame = Frame::x;
    for (std::size_t i = 0; i < s.coords.size(); ++i) {
        const double x = s.frame == Frame::x ? s.coords[i] : restored_coordinate(s.coords[i], kappa);
        out.coords[i] = x;
        out.psi[i] = s.psi[i] / std::sqrt(stretch(x, kappa));
    }
    return out;
}

int count_nodes(const std::vector<double>& psi, double floor) {
    double vmax = 0.0;
    for (double v : psi) {
        vmax = std::max(vmax, std::abs(v));
    }
    const double cut = floor * vmax;
    int nodes = 0;
    int last = 0;
    for (double v : psi) {
        if (std::abs(v) <= cut) {
            continue;
        }
        const int sign = v > 0.0 ? 1 : -1;
        if (last != 0 && sign != last) {
            ++nodes;
        }
        last = sign;
    }
    return nodes;
}

double richardson(double coarse, double fine) {
    return (4.0 * fine - coarse) / 3.0;
}

double observed_order(double e_h, double e_h2, double e_h4) {
    return std::log2(std::abs((e_h - e_h2) / (e_h2 - e_h4)));
}

ExtrapolatedSpectrum solve_extrapolated(const PotentialSpec& potential, const MassProfile& profile,
                                        const GridSpec& grid, int n_levels) {
    auto solve = [&](const GridSpec& g) {
        std::vector<double> e;
        const auto sols = g.frame == Frame::x ? solve_original_frame(potential, profile, g, n_levels)
                                              : solve_deformed_frame(potential, profile, g, n_levels);
        for (const auto& s : sols) {
            e.push_back(s.energy);
        }
        return e;
    };
    ExtrapolatedSpectrum out;
    out.coarse = solve(grid);
    out.fine = solve(grid.refined());
    for (std::size_t i = 0; i < out.coarse.size(); ++i) {
        out.energies.push_back(richardson(out.coarse[i], out.fine[i]));
    }
    return out;
}

int bound_state_count(const PotentialSpec& potential, const MassProfile& profile,
                      const GridSpec& grid) {
    check_grid(grid, Frame::x_kappa, "bound_state_count");
    const SymTridiagonal t = deformed_matrix(potential, profile, grid);
    const double limit = asymptote(potential, profile);
    return std::isinf(limit) ? static_cast<int>(t.size()) : count_below(t, limit);
}

TruncatedSpectrum solve_oscillator_truncated(double omega0, const MassProfile& profile, int n_levels,
                                             double points_per_unit) {
    const PotentialSpec potential = PotentialSpec::ml_oscillator(omega0);
    const double a0 = 1.0 / std::sqrt(omega0);
    const double k = profile.kappa.magnitude();
    const double length_scale = k > 0.0 ? std::min(a0, 1.0 / k) : a0;
    const double h = length_scale / points_per_unit;
    double half = k > 0.0 ? 12.0 / k : 12.0 * a0;

    auto grid_for = [&](double hw) {
        const int n = static_cast<int>(std::ceil(2.0 * hw / h)) + 1;
        return GridSpec{Frame::x_kappa, -hw, hw, n};
    };

    TruncatedSpectrum out;
    out.grid = grid_for(half);
    out.spectrum = solve_extrapolated(potential, profile, out.grid, n_levels);
    for (int doubling = 0; doubling < 8; ++doubling) {
        half *= 2.0;
        const GridSpec wider = grid_for(half);
        ExtrapolatedSpectrum next = solve_extrapolated(potential, profile, wider, n_levels);
        const double before = out.spectrum.energies.back();
        const double after = next.energies.back();
        out.grid = wider;
        out.spectrum = std::move(next);
        if (std::abs(after - before) <= 1e-9 * std::abs(after)) {
            out.bound_count = bound_state_count(potential, profile, out.grid.refined());
            return out;
        }
    }
    throw NumericError("solve_oscillator_truncated: top level still moving after 8 box doublings",
                       out.spectrum.energies.back());
}

ContinuityResidual continuity_residual(const WaveSnapshot& before, const WaveSnapshot& after,
                                       const MassProfile& profile) {
    if (before.grid != after.grid) {
        throw ConfigError("continuity_residual: snapshots live on different grids");
    }
    check_grid(before.grid, Frame::x, "continuity_residual");
    const std::size_t n = static_cast<std::size_t>(before.grid.interior());
    if (before.psi.size() != n || after.psi.size() != n) {
        throw ConfigError("continuity_residual: sample count does not match the grid interior");
    }
    const double dt = after.t - before.t;
    if (!(dt > 0.0)) {
        throw ConfigError("continuity_residual: snapshots must be ordered in time");
    }
    const DeformationParameter kappa = profile.kappa;
    const double h = before.grid.spacing();

    // Padded with the Dirichlet zeros so every interior node has two neighbours.
    std::vector<std::complex<double>> psi(n + 2, 0.0);
    std::vector<double> x(n + 2);
    for (std::size_t i = 0; i < n + 2; ++i) {
        x[i] = before.grid.node(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        psi[i + 1] = before.psi[i];
    }

    std::vector<double> J(n + 2, 0.0);
    std::vector<double> calJ(n + 2, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::complex<double> d = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
        J[i] = std::imag(std::conj(psi[i]) * d) / mass_at(profile, x[i]);
        // Phi = (1 + k^2 x^2)^{1/4} Psi differentiated on its own samples.
        const double sp = std::sqrt(stretch(x[i + 1], kappa));
        const double sm = std::sqrt(stretch(x[i - 1], kappa));
        const double s0 = std::sqrt(stretch(x[i], kappa));
        const std::complex<double> dphi = (sp * psi[i + 1] - sm * psi[i - 1]) / (2.0 * h);
        calJ[i] = std::imag(std::conj(s0 * psi[i]) * stretch(x[i], kappa) * dphi) / profile.m0;
    }

    ContinuityResidual out;
    out.x.resize(n);
    out.standard.resize(n);
    out.deformed.resize(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double rho0 = std::norm(before.psi[i - 1]);
        const double rho1 = std::norm(after.psi[i - 1]);
        const double s = stretch(x[i], kappa);
        const double std_res = (rho1 - rho0) / dt + (J[i + 1] - J[i - 1]) / (2.0 * h);
        const double def_res = s * (rho1 - rho0) / dt + s * (calJ[i + 1] - calJ[i - 1]) / (2.0 * h);
        out.x[i - 1] = x[i];
        out.standard[i - 1] = std_res;
        out.deformed[i - 1] = def_res;
        out.max_standard = std::max(out.max_standard, std::abs(std_res));
        out.max_deformed = std::max(out.max_deformed, std::abs(def_res));
    }
    return out;
}

WaveSnapshot euler_step(const WaveSnapshot& s, const PotentialSpec& potential,
                        const MassProfile& profile, double dt) {
    check_grid(s.grid, Frame::x, "euler_step");
    SymTridiagonal H = kinetic_matrix_vonroos(profile, OrderingPair{}, s.grid);
    for (int i = 0; i < s.grid.interior(); ++i) {
        H.diag[static_cast<std::size_t>(i)] += potential.value(s.grid.node(i + 1), profile);
    }
    const std::size_t n = H.size();
    if (s.psi.size() != n) {
        throw ConfigError("euler_step: sample count does not match the grid interior");
    }
    WaveSnapshot out{s.grid, s.t + dt, std::vector<std::complex<double>>(n)};
    const std::complex<double> minus_i_dt(0.0, -dt);
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> hpsi = H.diag[i] * s.psi[i];
        if (i > 0) {
            hpsi += H.off[i - 1] * s.psi[i - 1];
        }
        if (i + 1 < n) {
            hpsi += H.off[i] * s.psi[i + 1];
        }
        out.psi[i] = s.psi[i] + minus_i_dt * hpsi;
    }
    return out;
}

}  // namespace kpdm
