#include "kpdm/kappa_core.hpp"

#include "kpdm/errors.hpp"

#include <cmath>
#include <string>

namespace kpdm {

namespace {

// Below this |kappa u| the closed forms are replaced by their series.
constexpr double kSeriesThreshold = 1e-4;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

}  // namespace

DeformationParameter::DeformationParameter(double kappa) : kappa_(kappa) {
    if (!std::isfinite(kappa)) {
        throw DomainError("DeformationParameter: kappa must be finite");
    }
}

double deformed_coordinate(double u, DeformationParameter kappa) {
    const double k = kappa.magnitude();
    if (k == 0.0) {
        return u;
    }
    const double t = k * u;
    if (std::abs(t) < kSeriesThreshold) {
        const double t2 = t * t;
        return u * (1.0 - t2 / 6.0 + 3.0 * t2 * t2 / 40.0);
    }
    return std::asinh(t) / k;
}

double restored_coordinate(double v, DeformationParameter kappa) {
    const double k = kappa.magnitude();
    if (k == 0.0) {
        return v;
    }
    const double t = k * v;
    if (std::abs(t) < kSeriesThreshold) {
        const double t2 = t * t;
        return v * (1.0 + t2 / 6.0 + t2 * t2 / 120.0);
    }
    return std::sinh(t) / k;
}

double kexp(double u, DeformationParameter kappa) {
    require_finite(u, "kexp");
    return std::exp(deformed_coordinate(u, kappa));
}

double klog(double u, DeformationParameter kappa) {
    require_finite(u, "klog");
    if (!(u > 0.0)) {
        throw DomainError("klog: argument must be positive");
    }
    return restored_coordinate(std::log(u), kappa);
}

double kadd(double a, double b, DeformationParameter kappa) {
    require_finite(a, "kadd");
    require_finite(b, "kadd");
    return a * stretch(b, kappa) + b * stretch(a, kappa);
}

double ksub(double a, double b, DeformationParameter kappa) {
    require_finite(a, "ksub");
    require_finite(b, "ksub");
    return a * stretch(b, kappa) - b * stretch(a, kappa);
}

DeformedNumber deform(double u, DeformationParameter kappa) {
    require_finite(u, "deform");
    return DeformedNumber{deformed_coordinate(u, kappa), kappa};
}

double restore(const DeformedNumber& u_kappa) {
    require_finite(u_kappa.value, "restore");
    return restored_coordinate(u_kappa.value, u_kappa.kappa);
}

double kderiv(const Jet& f, double u, DeformationParameter kappa) {
    return stretch(u, kappa) * f.d1;
}

double kderiv_dual(const Jet& f, DeformationParameter kappa) {
    return f.d1 / stretch(f.value, kappa);
}

double kderiv2(const Jet& f, double u, DeformationParameter kappa) {
    // s d/du (s f') with s = sqrt(1 + k^2 u^2), s s' = k^2 u.
    const double k2 = kappa.squared();
    return (1.0 + k2 * u * u) * f.d2 + k2 * u * f.d1;
}

double kderiv2_dual(const Jet& f, DeformationParameter kappa) {
    // g d/du (g f') with g = (1 + k^2 f^2)^(-1/2), g' = -k^2 f f' g^3.
    const double g = 1.0 / stretch(f.value, kappa);
    const double g2 = g * g;
    return g2 * f.d2 - kappa.squared() * f.value * f.d1 * f.d1 * g2 * g2;
}

}  // namespace kpdm
