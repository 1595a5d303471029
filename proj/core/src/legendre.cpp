#include "kpdm/legendre.hpp"

#include "kpdm/errors.hpp"

#include <cmath>
#include <numbers>

namespace kpdm {

double normalized_legendre(int degree, int order, double u, double one_minus_u2) {
    if (order < 0 || degree < order) {
        throw DomainError("normalized_legendre: need degree >= order >= 0");
    }
    if (!(std::abs(u) <= 1.0) || !(one_minus_u2 >= 0.0)) {
        throw DomainError("normalized_legendre: argument outside [-1, 1]");
    }
    const int m = order;
    double p_mm = 0.0;
    if (m == 0) {
        p_mm = 1.0;
    } else if (one_minus_u2 > 0.0) {
        // sqrt((2m)!) / (2^m m!) (1 - u^2)^{m/2}, assembled in logs.
        const double log_p = 0.5 * std::lgamma(2.0 * m + 1.0) - m * std::numbers::ln2 -
                             std::lgamma(m + 1.0) + 0.5 * m * std::log(one_minus_u2);
        p_mm = std::exp(log_p);
    }
    if (degree == m) {
        return p_mm;
    }
    double prev = 0.0;
    double cur = p_mm;
    for (int l = m; l < degree; ++l) {
        const double a = (2.0 * l + 1.0) * u * cur;
        const double b = std::sqrt(static_cast<double>(l + m) * (l - m)) * prev;
        const double next = (a - b) / std::sqrt(static_cast<double>(l + 1 + m) * (l + 1 - m));
        prev = cur;
        cur = next;
    }
    return cur;
}

double normalized_legendre(int degree, int order, double u) {
    return normalized_legendre(degree, order, u, (1.0 - u) * (1.0 + u));
}

double hermite_function(int n, double x, double a0) {
    if (n < 0) {
        throw DomainError("hermite_function: n must be non-negative");
    }
    if (!(a0 > 0.0)) {
        throw DomainError("hermite_function: a0 must be positive");
    }
    const double xi = x / a0;
    double prev = 0.0;
    double cur = std::exp(-0.5 * xi * xi) / (std::sqrt(a0) * std::sqrt(std::sqrt(std::numbers::pi)));
    for (int k = 0; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace kpdm
