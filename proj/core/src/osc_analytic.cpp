#include "kpdm/osc_analytic.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/legendre.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace kpdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kIntegerTol = 1e-9;

void require_bound(const OscillatorSpec& spec, int n, const char* who) {
    if (n < 0) {
        throw DomainError(std::string(who) + ": n must be non-negative");
    }
    if (n >= spec.bound_state_count()) {
        throw DomainError(std::string(who) + ": level " + std::to_string(n) +
                          " is unbound; there are " + std::to_string(spec.bound_state_count()) +
                          " bound states");
    }
}

double kappa_a0_sq(const OscillatorSpec& spec) {
    return spec.kappa().squared() / spec.omega0();
}

}  // namespace

OscillatorSpec::OscillatorSpec(double omega0, DeformationParameter kappa)
    : omega0_(omega0), kappa_(kappa), a0_(0.0), omega_kappa_(0.0), nu_(kInf), inv_z_(0.0) {
    if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
        throw DomainError("OscillatorSpec: omega0 must be finite and positive");
    }
    a0_ = 1.0 / std::sqrt(omega0);
    const double k2 = kappa.squared();
    omega_kappa_ = omega0 * std::hypot(1.0, k2 / (2.0 * omega0));
    if (!kappa.is_zero()) {
        nu_ = omega_kappa_ / k2 - 0.5;
        inv_z_ = k2 / std::hypot(k2, 2.0 * omega0);
    }
}

OscillatorSpec OscillatorSpec::from_nu(double nu, double omega0) {
    if (std::isinf(nu) && nu > 0.0) {
        return OscillatorSpec(omega0, DeformationParameter(0.0));
    }
    if (!std::isfinite(nu) || !(nu > 0.0)) {
        throw DomainError("OscillatorSpec::from_nu: nu must be positive");
    }
    const double kappa_a0 = std::pow(nu * (nu + 1.0), -0.25);
    OscillatorSpec spec(omega0, DeformationParameter(kappa_a0 * std::sqrt(omega0)));
    spec.nu_ = nu;
    return spec;
}

double OscillatorSpec::W() const noexcept {
    return kappa_.is_zero() ? kInf : omega0_ * omega0_ / (2.0 * kappa_.squared());
}

int OscillatorSpec::bound_state_count() const noexcept {
    if (std::isinf(nu_) || nu_ > static_cast<double>(std::numeric_limits<int>::max())) {
        return std::numeric_limits<int>::max();
    }
    return static_cast<int>(std::ceil(nu_ - kIntegerTol));
}

bool OscillatorSpec::integer_nu() const noexcept {
    return std::isfinite(nu_) && std::abs(nu_ - std::round(nu_)) <= kIntegerTol;
}

double energy(const OscillatorSpec& spec, int n) {
    require_bound(spec, n, "energy");
    const double h = n + 0.5;
    const double k2 = spec.kappa().squared();
    return spec.omega_kappa() * h - 0.5 * k2 * h * h - k2 / 8.0;
}

std::vector<double> spectrum(const OscillatorSpec& spec, int n_max) {
    require_bound(spec, n_max, "spectrum");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(energy(spec, n));
    }
    return out;
}

double wkb_energy(const OscillatorSpec& spec, int n) {
    if (n < 0) {
        throw DomainError("wkb_energy: n must be non-negative");
    }
    const double h = n + 0.5;
    return spec.omega0() * h - 0.5 * spec.kappa().squared() * h * h;
}

double epsilon_shift(const OscillatorSpec& spec, double energy) {
    return energy - spec.W();
}

double eigenfunction(const OscillatorSpec& spec, int n, double x) {
    require_bound(spec, n, "eigenfunction");
    if (spec.kappa().is_zero()) {
        return hermite_function(n, x, spec.a0());
    }
    if (!spec.integer_nu()) {
        throw UnsupportedError("eigenfunction: only integer nu is supported (nu = " +
                               std::to_string(spec.nu()) + ")");
    }
    const int nu = static_cast<int>(std::lround(spec.nu()));
    const int mu = nu - n;
    const double k = spec.kappa().magnitude();
    const double kx = k * x;
    const double s = std::hypot(1.0, kx);
    const double u = kx / s;
    // 1 - u^2 = 1/(1 + kappa^2 x^2), kept exact for large |x|.
    const double one_minus_u2 = std::exp(-std::log1p(kx * kx));
    return std::sqrt(k * mu) * normalized_legendre(nu, mu, u, one_minus_u2) / std::sqrt(s);
}

MomentSet moments(const OscillatorSpec& spec, int n) {
    const double E = energy(spec, n);
    const double k2 = spec.kappa().squared();
    const double w0 = spec.omega0();
    MomentSet m;
    m.source = MomentSource::closed_form;
    m.mean_x = 0.0;
    m.mean_p = 0.0;
    if (spec.nu() - n <= 1.0 + kIntegerTol) {
        m.mean_x2 = kInf;
    } else {
        m.mean_x2 = (E + 0.5 * k2) / (w0 * w0 - 2.0 * E * k2 - k2 * k2);
    }
    const double iz = spec.inv_z();
    m.mean_p2 = (E - 0.25 * k2) * (1.0 - (2.0 * n + 1.0) * iz) / (1.0 - 4.0 * iz * iz);
    m.finalize();
    return m;
}

double x2_explicit(const OscillatorSpec& spec, int n) {
    require_bound(spec, n, "x2_explicit");
    const double ka2 = kappa_a0_sq(spec);
    const double r = spec.omega_kappa() / spec.omega0();
    const double bracket = r * (n + 0.5) - 0.5 * ka2 * (n * n + n - 0.5);
    const double den = 1.0 - 2.0 * ka2 * bracket;
    if (!(den > 0.0)) {
        return kInf;
    }
    return spec.a0() * spec.a0() * bracket / den;
}

double p2_explicit(const OscillatorSpec& spec, int n) {
    require_bound(spec, n, "p2_explicit");
    const double ka2 = kappa_a0_sq(spec);
    const double r = spec.omega_kappa() / spec.omega0();
    const double bracket = r * (n + 0.5) - 0.5 * ka2 * (n * n + n + 1.0);
    const double iz = spec.inv_z();
    // (z^2 - (2n+1) z) / (z^2 - 4), divided through by z^2.
    return spec.omega0() * bracket * (1.0 - (2.0 * n + 1.0) * iz) / (1.0 - 4.0 * iz * iz);
}

double potential_expectation(const OscillatorSpec& spec, int n) {
    require_bound(spec, n, "potential_expectation");
    const double w0 = spec.omega0();
    const double k2 = spec.kappa().squared();
    // W (2n+1)/z with W/z written without the 1/kappa^2 factor.
    return w0 * w0 * (2.0 * n + 1.0) / (2.0 * std::hypot(k2, 2.0 * w0));
}

double quantum_amplitude(const OscillatorSpec& spec, int n) {
    require_bound(spec, n, "quantum_amplitude");
    const double ka2 = kappa_a0_sq(spec);
    const double r = spec.omega_kappa() / spec.omega0();
    const double bracket = r * (2.0 * n + 1.0) - ka2 * (n * n + n + 0.5);
    const double den = 1.0 - ka2 * bracket;
    if (!(den > 0.0)) {
        return kInf;
    }
    return spec.a0() * std::sqrt(bracket / den);
}

EnergySplit energy_split(const OscillatorSpec& spec, int n) {
    const double E = energy(spec, n);
    const double a = quantum_amplitude(spec, n);
    EnergySplit out;
    out.amplitude = a;
    if (std::isinf(a)) {
        out.T = kNaN;
        out.V = kNaN;
        return out;
    }
    const double w0 = spec.omega0();
    const double k2 = spec.kappa().squared();
    const double s = std::hypot(1.0, spec.kappa().scaled(a));
    const double g = std::hypot(1.0, k2 / (2.0 * w0));  // omega_kappa / omega0
    // W (1/s)(1/g - 1/s) with the difference of reciprocals expanded so the
    // 1/kappa^2 in W cancels analytically.
    const double diff_over_k2 = (a * a - k2 / (4.0 * w0 * w0)) / (g * s * (g + s));
    out.T = 0.5 * w0 * w0 * diff_over_k2 / s;
    out.V = E - out.T;
    return out;
}

std::vector<UncertaintyRow> uncertainty_scan(const std::vector<double>& kappa_a0,
                                             const std::vector<int>& levels, double omega0) {
    std::vector<UncertaintyRow> rows;
    rows.reserve(kappa_a0.size() * levels.size());
    const double a0 = 1.0 / std::sqrt(omega0);
    for (double ka : kappa_a0) {
        const OscillatorSpec spec(omega0, DeformationParameter(ka / a0));
        for (int n : levels) {
            UncertaintyRow row;
            row.kappa_a0 = ka;
            row.n = n;
            row.nu = spec.nu();
            if (n < 0 || n >= spec.bound_state_count() || spec.nu() - n <= 1.0 + kIntegerTol) {
                row.flagged = true;
                row.dx = kNaN;
                row.dp = n >= 0 && n < spec.bound_state_count() ? moments(spec, n).dp : kNaN;
                row.product = kNaN;
            } else {
                const MomentSet m = moments(spec, n);
                row.dx = m.dx;
                row.dp = m.dp;
                row.product = m.dx * m.dp;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace kpdm
