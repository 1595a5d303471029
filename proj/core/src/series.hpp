#pragma once

#include <cmath>

namespace kpdm::detail {

// (sinh(2a)/(2a) - 1) / a^2, finite as a -> 0.
inline double sinhc_excess(double a) {
    const double a2 = a * a;
    if (std::abs(a) < 0.1) {
        return 2.0 / 3.0 +
               a2 * (2.0 / 15.0 + a2 * (4.0 / 315.0 + a2 * (2.0 / 2835.0 + a2 * (4.0 / 155925.0))));
    }
    return (std::sinh(2.0 * a) / (2.0 * a) - 1.0) / a2;
}

}  // namespace kpdm::detail
