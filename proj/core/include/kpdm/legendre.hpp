#pragma once

// Special functions used by the oscillator eigenfunctions.

namespace kpdm {

/// sqrt((l - m)! / (l + m)!) P_l^m(u) for integers l >= m >= 0, without the
/// Condon-Shortley phase, so the value is positive as u -> 1.
/// `one_minus_u2` is passed separately so callers can keep it accurate near
/// |u| = 1; it must equal 1 - u^2. DomainError for invalid indices or |u| > 1.
double normalized_legendre(int degree, int order, double u, double one_minus_u2);
double normalized_legendre(int degree, int order, double u);

/// Harmonic-oscillator eigenfunction with length scale a0, unit L2 norm on the
/// real line, positive for large positive x.
double hermite_function(int n, double x, double a0 = 1.0);

}  // namespace kpdm
