#pragma once

// Exact kappa-algebra: deformed exponential/logarithm, kappa-addition,
// deformed numbers and the direct/dual kappa-derivatives.
//
// Every function is even in kappa. kappa == 0 is handled by an explicit
// branch that reproduces ordinary arithmetic.

#include <cmath>

namespace kpdm {

/// The deformation parameter kappa (units of inverse length).
class DeformationParameter {
public:
    constexpr DeformationParameter() = default;
    /// Throws DomainError for non-finite values.
    explicit DeformationParameter(double kappa);

    constexpr double value() const noexcept { return kappa_; }
    constexpr double magnitude() const noexcept { return kappa_ < 0 ? -kappa_ : kappa_; }
    constexpr double squared() const noexcept { return kappa_ * kappa_; }
    constexpr bool is_zero() const noexcept { return kappa_ == 0.0; }

    /// kappa * length, the dimensionless combination (kappa L, kappa a0, ...).
    constexpr double scaled(double length) const noexcept { return magnitude() * length; }

private:
    double kappa_ = 0.0;
};

/// A deformed number u_kappa = arcsinh(kappa u) / kappa together with its kappa.
struct DeformedNumber {
    double value = 0.0;
    DeformationParameter kappa;
};

/// Value and derivatives of a scalar function at one point, supplied by the caller.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

double kexp(double u, DeformationParameter kappa);
/// Throws DomainError for u <= 0.
double klog(double u, DeformationParameter kappa);

double kadd(double a, double b, DeformationParameter kappa);
double ksub(double a, double b, DeformationParameter kappa);

DeformedNumber deform(double u, DeformationParameter kappa);
double restore(const DeformedNumber& u_kappa);

/// arcsinh(kappa u)/kappa and its inverse sinh(kappa v)/kappa as plain doubles.
double deformed_coordinate(double u, DeformationParameter kappa);
double restored_coordinate(double v, DeformationParameter kappa);

/// sqrt(1 + kappa^2 u^2).
inline double stretch(double u, DeformationParameter kappa) {
    return std::hypot(1.0, kappa.magnitude() * u);
}

/// D_kappa f(u) = sqrt(1 + kappa^2 u^2) f'(u).
double kderiv(const Jet& f, double u, DeformationParameter kappa);
/// Dual derivative f'(u) / sqrt(1 + kappa^2 f(u)^2).
double kderiv_dual(const Jet& f, DeformationParameter kappa);

/// sqrt(1+k^2u^2) d/du [ sqrt(1+k^2u^2) f'(u) ].
double kderiv2(const Jet& f, double u, DeformationParameter kappa);
/// g d/du [ g f'(u) ] with g = 1/sqrt(1 + k^2 f^2).
double kderiv2_dual(const Jet& f, DeformationParameter kappa);

}  // namespace kpdm
