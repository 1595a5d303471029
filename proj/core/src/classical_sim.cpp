#include "kpdm/classical_sim.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/quadrature.hpp"
#include "series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace kpdm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Yoshida's sixth-order triple-jump weights (solution A), applied as
// w3 w2 w1 w0 w1 w2 w3 leapfrog substeps.
constexpr double kW1 = -1.17767998417887100695;
constexpr double kW2 = 0.235573213359358133684;
constexpr double kW3 = 0.784513610477557263819;
constexpr double kW0 = 1.0 - 2.0 * (kW1 + kW2 + kW3);
constexpr std::array<double, 7> kWeights = {kW3, kW2, kW1, kW0, kW1, kW2, kW3};

class DeformedStepper {
public:
    DeformedStepper(const MassProfile& profile, const PotentialSpec& potential)
        : profile_(profile), potential_(potential) {
        if (potential.kind() == PotentialKind::infinite_well) {
            wall_ = deformed_coordinate(potential.length(), profile.kappa);
        }
    }

    void step(double& y, double& Pi, double dt) const {
        for (double w : kWeights) {
            leapfrog(y, Pi, w * dt);
        }
    }

private:
    double force(double y) const { return -deformed_potential_derivative(potential_, y, profile_); }

    void drift(double& y, double& Pi, double tau) const {
        y += tau * Pi / profile_.m0;
        if (wall_ > 0.0 && (y < 0.0 || y > wall_)) {
            // Free flight between walls: unfold the image path, flipping Pi once per wall hit.
            const double q = std::floor(y / wall_);
            const bool odd = std::fmod(std::abs(q), 2.0) == 1.0;
            y = odd ? (q + 1.0) * wall_ - y : y - q * wall_;
            if (odd) {
                Pi = -Pi;
            }
        }
    }

    void leapfrog(double& y, double& Pi, double tau) const {
        Pi += 0.5 * tau * force(y);
        drift(y, Pi, tau);
        Pi += 0.5 * tau * force(y);
    }

    const MassProfile& profile_;
    const PotentialSpec& potential_;
    double wall_ = 0.0;
};

}  // namespace

Trajectory integrate(const MassProfile& profile, const PotentialSpec& potential,
                     const PhaseState& s0, double dt, double T, const IntegrateOptions& opts) {
    profile.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("integrate: dt must be positive");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("integrate: T must be positive");
    }
    if (!std::isfinite(s0.x) || !std::isfinite(s0.p) || !std::isfinite(s0.t)) {
        throw DomainError("integrate: non-finite initial state");
    }
    if (!potential.contains(s0.x)) {
        throw DomainError("integrate: initial position outside the potential domain");
    }
    const int stride = std::max(1, opts.stride);

    Trajectory traj;
    traj.coordinate_frame = CoordinateFrame::standard;
    DeformedPhaseState d = pct_forward(s0, profile.kappa);
    const double h0 = deformed_hamiltonian_value(profile, potential, d);
    const double scale = h0 != 0.0 ? std::abs(h0) : 1.0;

    traj.samples.push_back(s0);
    traj.deformed_samples.push_back(d);
    traj.min_abs_Pi = traj.max_abs_Pi = std::abs(d.Pi_kappa);

    const DeformedStepper stepper(profile, potential);
    const auto n_steps = static_cast<long long>(std::ceil(T / dt * (1.0 - 1e-12)));
    for (long long k = 1; k <= n_steps; ++k) {
        const double t_prev = s0.t + static_cast<double>(k - 1) * dt;
        const double t_next = k == n_steps ? s0.t + T : s0.t + static_cast<double>(k) * dt;
        stepper.step(d.x_kappa, d.Pi_kappa, t_next - t_prev);
        d.t = t_next;

        const PhaseState s = pct_inverse(d, profile.kappa);
        if (!std::isfinite(s.x) || !std::isfinite(s.p) || std::abs(s.x) > opts.escape_bound) {
            traj.halted = true;
            traj.halt_reason = "particle escaped beyond |x| = " + std::to_string(opts.escape_bound) +
                               " at t = " + std::to_string(t_prev);
            break;
        }
        const double h = deformed_hamiltonian_value(profile, potential, d);
        traj.energy_drift = std::max(traj.energy_drift, std::abs(h - h0) / scale);
        traj.min_abs_Pi = std::min(traj.min_abs_Pi, std::abs(d.Pi_kappa));
        traj.max_abs_Pi = std::max(traj.max_abs_Pi, std::abs(d.Pi_kappa));
        if (k % stride == 0 || k == n_steps) {
            traj.samples.push_back(s);
            traj.deformed_samples.push_back(d);
        }
    }
    return traj;
}

const char* to_string(OrbitRegime r) {
    switch (r) {
        case OrbitRegime::bounded: return "bounded";
        case OrbitRegime::separatrix: return "separatrix";
        case OrbitRegime::unbounded: return "unbounded";
    }
    return "unknown";
}

double OrbitParams::period() const {
    return bounded() ? 2.0 * std::numbers::pi / Omega_kappa : kNaN;
}

OrbitParams oscillator_orbit_from_amplitude(double A0, double omega0, const MassProfile& profile) {
    profile.validate();
    if (!std::isfinite(A0) || A0 < 0.0) {
        throw DomainError("oscillator orbit: A0 must be finite and non-negative");
    }
    if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
        throw DomainError("oscillator orbit: omega0 must be finite and positive");
    }
    OrbitParams o;
    o.A0 = A0;
    o.energy = 0.5 * profile.m0 * omega0 * omega0 * A0 * A0;
    o.W_kappa = ml_well_depth(omega0, profile);
    const double q = profile.kappa.squared() * A0 * A0;
    if (std::abs(q - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) {
        o.regime = OrbitRegime::separatrix;
    } else if (q < 1.0) {
        o.regime = OrbitRegime::bounded;
    } else {
        o.regime = OrbitRegime::unbounded;
    }
    if (o.bounded()) {
        const double c = std::sqrt(1.0 - q);
        o.A_kappa = A0 / c;
        o.Omega_kappa = omega0 * c;
    } else {
        o.A_kappa = kNaN;
        o.Omega_kappa = kNaN;
    }
    return o;
}

OrbitParams oscillator_orbit_from_energy(double energy, double omega0, const MassProfile& profile) {
    if (!std::isfinite(energy) || energy < 0.0) {
        throw DomainError("oscillator orbit: energy must be finite and non-negative");
    }
    if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
        throw DomainError("oscillator orbit: omega0 must be finite and positive");
    }
    profile.validate();
    return oscillator_orbit_from_amplitude(std::sqrt(2.0 * energy / (profile.m0 * omega0 * omega0)),
                                           omega0, profile);
}

PhaseState oscillator_orbit_state(const OrbitParams& orbit, const MassProfile& profile, double t,
                                  double delta0) {
    if (!orbit.bounded()) {
        throw DomainError("oscillator_orbit_state: orbit is not bounded");
    }
    const double phase = orbit.Omega_kappa * t + delta0;
    const double x = orbit.A_kappa * std::cos(phase);
    const double v = -orbit.A_kappa * orbit.Omega_kappa * std::sin(phase);
    return {x, mass_at(profile, x) * v, t};
}

double free_trajectory(double v0, DeformationParameter kappa, double t) {
    return restored_coordinate(v0 * t, kappa);
}

double well_classical_density(double L, DeformationParameter kappa, double x) {
    if (!(L > 0.0)) {
        throw DomainError("well_classical_density: L must be positive");
    }
    if (x < 0.0 || x > L) {
        return 0.0;
    }
    return 1.0 / (deformed_coordinate(L, kappa) * stretch(x, kappa));
}

double oscillator_classical_density(double A_kappa, double x) {
    if (!(A_kappa > 0.0)) {
        throw DomainError("oscillator_classical_density: amplitude must be positive");
    }
    const double ax = std::abs(x);
    if (ax == A_kappa) {
        throw DomainError("oscillator_classical_density: turning point is an integrable singularity");
    }
    if (ax > A_kappa) {
        return 0.0;
    }
    return 1.0 / (std::numbers::pi * std::sqrt((A_kappa - ax) * (A_kappa + ax)));
}

ClassicalMoments well_classical_moments(double L, double energy, const MassProfile& profile) {
    if (!std::isfinite(L) || !(L > 0.0)) {
        throw DomainError("well_classical_moments: L must be positive");
    }
    if (!std::isfinite(energy) || energy < 0.0) {
        throw DomainError("well_classical_moments: energy must be non-negative");
    }
    profile.validate();
    ClassicalMoments m;
    const double t = profile.kappa.scaled(L);
    if (t == 0.0) {
        m.mean_x = 0.5 * L;
        m.mean_x2 = L * L / 3.0;
        m.mean_p2 = 2.0 * profile.m0 * energy;
        return m;
    }
    // a = arcsinh(kappa L); the closed forms are rewritten without the
    // (sqrt(1+t^2) - 1) and (t s / a - 1) cancellations.
    const double s = std::hypot(1.0, t);
    const double a = std::asinh(t);
    m.mean_x = L * t / ((s + 1.0) * a);
    m.mean_x2 = L * L * 0.5 * (a / t) * (a / t) * detail::sinhc_excess(a);
    m.mean_p2 = 2.0 * profile.m0 * energy * t / (s * a);
    return m;
}

ClassicalMoments oscillator_classical_moments(double A0, double omega0, const MassProfile& profile) {
    const OrbitParams o = oscillator_orbit_from_amplitude(A0, omega0, profile);
    if (!o.bounded()) {
        throw DomainError("oscillator_classical_moments: no bounded ensemble for kappa^2 A0^2 >= 1");
    }
    const double c = std::sqrt(1.0 - profile.kappa.squared() * A0 * A0);
    ClassicalMoments m;
    m.mean_x2 = 0.5 * o.A_kappa * o.A_kappa;
    m.mean_p2 = profile.m0 * o.energy * c;
    return m;
}

ClassicalMoments time_average_moments(const Trajectory& trajectory) {
    const std::size_t n = trajectory.samples.size();
    if (n < 3) {
        throw DomainError("time_average_moments: need at least three samples");
    }
    ClassicalMoments m;
    m.source = MomentSource::time_average;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const PhaseState& s = trajectory.samples[i];
        m.mean_x += s.x;
        m.mean_x2 += s.x * s.x;
        m.mean_p += s.p;
        m.mean_p2 += s.p * s.p;
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    m.mean_x *= inv;
    m.mean_x2 *= inv;
    m.mean_p *= inv;
    m.mean_p2 *= inv;
    return m;
}

std::vector<WkbLevel> wkb_levels(double omega0, const MassProfile& profile, int n_max) {
    if (n_max < 0) {
        throw DomainError("wkb_levels: n_max must be non-negative");
    }
    if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
        throw DomainError("wkb_levels: omega0 must be finite and positive");
    }
    profile.validate();
    const double depth = ml_well_depth(omega0, profile);
    std::vector<WkbLevel> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double q = n + 0.5;
        const double e = omega0 * q - profile.kappa.squared() * q * q / (2.0 * profile.m0);
        out.push_back({n, e, e < 0.0 || e >= depth});
    }
    return out;
}

double wkb_action(double energy, double omega0, const MassProfile& profile) {
    const OrbitParams o = oscillator_orbit_from_energy(energy, omega0, profile);
    if (!o.bounded()) {
        throw DomainError("wkb_action: energy above the well depth has no turning points");
    }
    if (energy == 0.0) {
        return 0.0;
    }
    const PotentialSpec v = PotentialSpec::ml_oscillator(omega0);
    const double A = o.A_kappa;
    auto integrand = [&](double theta) {
        const double x = A * std::sin(theta);
        const double kinetic = std::max(energy - v.value(x, profile), 0.0);
        return std::sqrt(2.0 * mass_at(profile, x) * kinetic) * A * std::cos(theta);
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-13;
    const double half_pi = 0.5 * std::numbers::pi;
    return integrate(integrand, -half_pi, half_pi, opt).value / (2.0 * std::numbers::pi);
}

VirialSplit virial_split(double A0, double omega0, const MassProfile& profile) {
    const OrbitParams o = oscillator_orbit_from_amplitude(A0, omega0, profile);
    if (!o.bounded()) {
        throw DomainError("virial_split: unbounded regime has no orbit averages");
    }
    const double c = std::sqrt(1.0 - profile.kappa.squared() * A0 * A0);
    VirialSplit v;
    v.energy = o.energy;
    v.T_bar = 0.5 * profile.m0 * omega0 * omega0 * c * A0 * A0 / (1.0 + c);
    v.V_bar = v.energy - v.T_bar;
    const double expected = v.T_bar / c;
    if (std::abs(v.V_bar - expected) > 1e-12 * std::max(std::abs(expected), 1e-300)) {
        throw NumericError("virial_split: V_bar != T_bar / sqrt(1 - kappa^2 A0^2)",
                           std::abs(v.V_bar - expected));
    }
    return v;
}

VirialSplit trajectory_energy_split(const Trajectory& trajectory, const MassProfile& profile,
                                    const PotentialSpec& potential) {
    const std::size_t n = trajectory.samples.size();
    if (n < 3) {
        throw DomainError("trajectory_energy_split: need at least three samples");
    }
    VirialSplit v;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const PhaseState& s = trajectory.samples[i];
        const double pot = potential.value(s.x, profile);
        v.V_bar += pot;
        v.T_bar += s.p * s.p / (2.0 * mass_at(profile, s.x));
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    v.T_bar *= inv;
    v.V_bar *= inv;
    v.energy = v.T_bar + v.V_bar;
    return v;
}

}  // namespace kpdm
