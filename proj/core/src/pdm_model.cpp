#include "kpdm/pdm_model.hpp"

#include "kpdm/errors.hpp"

// The Boost 1.74 pchip header calls isnan unqualified.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace kpdm {

struct PotentialSpec::Table {
    double lo;
    double hi;
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

void MassProfile::validate() const {
    if (!std::isfinite(m0) || !(m0 > 0.0)) {
        throw DomainError("MassProfile: m0 must be finite and positive");
    }
}

double mass_at(const MassProfile& profile, double x) {
    const double kx = profile.kappa.magnitude() * x;
    return profile.m0 / (1.0 + kx * kx);
}

const char* to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::infinite_well: return "infinite_well";
        case PotentialKind::ml_oscillator: return "ml_oscillator";
        case PotentialKind::free: return "free";
        case PotentialKind::tabulated: return "tabulated";
    }
    return "unknown";
}

PotentialSpec PotentialSpec::infinite_well(double L) {
    if (!std::isfinite(L) || !(L > 0.0)) {
        throw DomainError("infinite_well: L must be finite and positive");
    }
    PotentialSpec p;
    p.kind_ = PotentialKind::infinite_well;
    p.length_ = L;
    return p;
}

PotentialSpec PotentialSpec::ml_oscillator(double omega0) {
    if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
        throw DomainError("ml_oscillator: omega0 must be finite and positive");
    }
    PotentialSpec p;
    p.kind_ = PotentialKind::ml_oscillator;
    p.omega0_ = omega0;
    return p;
}

PotentialSpec PotentialSpec::free() {
    return PotentialSpec{};
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> x, std::vector<double> v) {
    if (x.size() != v.size() || x.size() < 4) {
        throw DomainError("tabulated: need at least 4 (x, V) pairs of equal length");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(v[i])) {
            throw DomainError("tabulated: non-finite sample");
        }
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw DomainError("tabulated: abscissae must be strictly increasing");
        }
    }
    PotentialSpec p;
    p.kind_ = PotentialKind::tabulated;
    const double lo = x.front();
    const double hi = x.back();
    p.table_ = std::make_shared<const Table>(
        Table{lo, hi, boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(v))});
    return p;
}

double PotentialSpec::domain_lo() const noexcept {
    switch (kind_) {
        case PotentialKind::infinite_well: return 0.0;
        case PotentialKind::tabulated: return table_->lo;
        default: return -std::numeric_limits<double>::infinity();
    }
}

double PotentialSpec::domain_hi() const noexcept {
    switch (kind_) {
        case PotentialKind::infinite_well: return length_;
        case PotentialKind::tabulated: return table_->hi;
        default: return std::numeric_limits<double>::infinity();
    }
}

bool PotentialSpec::contains(double x) const noexcept {
    return x >= domain_lo() && x <= domain_hi();
}

double PotentialSpec::value(double x, const MassProfile& profile) const {
    if (!std::isfinite(x) || !contains(x)) {
        throw DomainError(std::string("potential ") + to_string(kind_) + ": x = " + std::to_string(x) +
                          " outside the domain");
    }
    switch (kind_) {
        case PotentialKind::infinite_well:
        case PotentialKind::free:
            return 0.0;
        case PotentialKind::ml_oscillator: {
            const double kx = profile.kappa.magnitude() * x;
            return 0.5 * profile.m0 * omega0_ * omega0_ * x * x / (1.0 + kx * kx);
        }
        case PotentialKind::tabulated:
            return table_->spline(x);
    }
    return 0.0;
}

double PotentialSpec::derivative(double x, const MassProfile& profile) const {
    if (!std::isfinite(x) || !contains(x)) {
        throw DomainError(std::string("potential ") + to_string(kind_) + ": x outside the domain");
    }
    switch (kind_) {
        case PotentialKind::infinite_well:
        case PotentialKind::free:
            return 0.0;
        case PotentialKind::ml_oscillator: {
            const double s = 1.0 + profile.kappa.squared() * x * x;
            return profile.m0 * omega0_ * omega0_ * x / (s * s);
        }
        case PotentialKind::tabulated:
            return table_->spline.prime(x);
    }
    return 0.0;
}

double ml_well_depth(double omega0, const MassProfile& profile) {
    if (profile.kappa.is_zero()) {
        return std::numeric_limits<double>::infinity();
    }
    return profile.m0 * omega0 * omega0 / (2.0 * profile.kappa.squared());
}

double hamiltonian_value(const MassProfile& profile, const PotentialSpec& potential,
                         const PhaseState& s) {
    const double v = potential.value(s.x, profile);
    return s.p * s.p / (2.0 * mass_at(profile, s.x)) + v;
}

double deformed_hamiltonian_value(const MassProfile& profile, const PotentialSpec& potential,
                                  const DeformedPhaseState& s) {
    return s.Pi_kappa * s.Pi_kappa / (2.0 * profile.m0) +
           deformed_potential(potential, s.x_kappa, profile);
}

DeformedPhaseState pct_forward(const PhaseState& s, DeformationParameter kappa) {
    return {deformed_coordinate(s.x, kappa), stretch(s.x, kappa) * s.p, s.t};
}

PhaseState pct_inverse(const DeformedPhaseState& s, DeformationParameter kappa) {
    const double x = restored_coordinate(s.x_kappa, kappa);
    return {x, s.Pi_kappa / stretch(x, kappa), s.t};
}

namespace {

// tanh(kappa y) / kappa, equal to y at kappa = 0.
double tanh_over_kappa(double y, DeformationParameter kappa) {
    const double k = kappa.magnitude();
    return k == 0.0 ? y : std::tanh(k * y) / k;
}

}  // namespace

double deformed_potential(const PotentialSpec& potential, double x_kappa,
                          const MassProfile& profile) {
    if (!std::isfinite(x_kappa)) {
        throw DomainError("deformed_potential: non-finite coordinate");
    }
    switch (potential.kind()) {
        case PotentialKind::infinite_well: {
            const double hi = deformed_coordinate(potential.length(), profile.kappa);
            if (x_kappa < 0.0 || x_kappa > hi) {
                throw DomainError("deformed_potential: x_kappa outside [0, L_kappa]");
            }
            return 0.0;
        }
        case PotentialKind::free:
            return 0.0;
        case PotentialKind::ml_oscillator: {
            // W tanh^2(kappa y), written so that kappa = 0 is the harmonic limit.
            const double w = potential.omega0();
            const double t = tanh_over_kappa(x_kappa, profile.kappa);
            return 0.5 * profile.m0 * w * w * t * t;
        }
        case PotentialKind::tabulated:
            return potential.value(restored_coordinate(x_kappa, profile.kappa), profile);
    }
    return 0.0;
}

double deformed_potential_derivative(const PotentialSpec& potential, double x_kappa,
                                     const MassProfile& profile) {
    switch (potential.kind()) {
        case PotentialKind::infinite_well:
        case PotentialKind::free:
            return 0.0;
        case PotentialKind::ml_oscillator: {
            const double w = potential.omega0();
            const double sech = 1.0 / std::cosh(profile.kappa.magnitude() * x_kappa);
            return profile.m0 * w * w * tanh_over_kappa(x_kappa, profile.kappa) * sech * sech;
        }
        case PotentialKind::tabulated: {
            const double x = restored_coordinate(x_kappa, profile.kappa);
            return potential.derivative(x, profile) * stretch(x, profile.kappa);
        }
    }
    return 0.0;
}

SymTridiagonal kinetic_matrix_vonroos(const MassProfile& profile, const OrderingPair& ordering,
                                      const GridSpec& grid) {
    if (grid.frame != Frame::x) {
        throw ConfigError("kinetic_matrix_vonroos: needs a grid in the original x frame");
    }
    grid.validate();
    profile.validate();

    // A = -m^{-alpha} D- m^{gamma} D+ m^{-beta} with staggered differences and
    // gamma = -1 + alpha + beta; T = (A + A^T) / 4 carries the 1/2 of p^2/2m.
    const double h = grid.spacing();
    const double ih2 = 1.0 / (h * h);
    const double gamma = -1.0 + ordering.alpha + ordering.beta;
    const int n = grid.interior();

    auto a = [&](double x) { return std::pow(mass_at(profile, x), -ordering.beta); };
    auto c = [&](double x) { return std::pow(mass_at(profile, x), -ordering.alpha); };
    auto b = [&](double x) { return std::pow(mass_at(profile, x), gamma); };

    SymTridiagonal t;
    t.diag.resize(static_cast<std::size_t>(n));
    t.off.resize(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    for (int r = 0; r < n; ++r) {
        const double x = grid.node(r + 1);
        const double bp = b(x + 0.5 * h);
        const double bm = b(x - 0.5 * h);
        t.diag[static_cast<std::size_t>(r)] = 0.5 * c(x) * a(x) * (bp + bm) * ih2;
        if (r + 1 < n) {
            const double xn = grid.node(r + 2);
            t.off[static_cast<std::size_t>(r)] = -0.25 * bp * (c(x) * a(xn) + c(xn) * a(x)) * ih2;
        }
    }
    return t;
}

}  // namespace kpdm
