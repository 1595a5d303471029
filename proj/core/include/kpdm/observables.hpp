#pragma once

#include <cmath>
#include <limits>

namespace kpdm {

enum class MomentSource { closed_form, quadrature, time_average };

/// Stationary-state expectation values. Fields that do not apply to a
/// system stay NaN (dk and mean_Pi2 exist only where a pseudo-momentum is defined).
struct MomentSet {
    double mean_x = 0.0;
    double mean_x2 = 0.0;
    double mean_p = 0.0;
    double mean_p2 = 0.0;
    double dx = 0.0;
    double dp = 0.0;
    double dk = std::numeric_limits<double>::quiet_NaN();
    double mean_Pi2 = std::numeric_limits<double>::quiet_NaN();
    MomentSource source = MomentSource::closed_form;

    /// Fills dx, dp from the raw moments. Variances are clamped at zero so
    /// roundoff cannot produce NaN for sharply localized states.
    void finalize() {
        dx = std::sqrt(std::fmax(mean_x2 - mean_x * mean_x, 0.0));
        dp = std::sqrt(std::fmax(mean_p2 - mean_p * mean_p, 0.0));
    }
};

inline const char* to_string(MomentSource s) {
    switch (s) {
        case MomentSource::closed_form: return "closed_form";
        case MomentSource::quadrature: return "quadrature";
        case MomentSource::time_average: return "time_average";
    }
    return "unknown";
}

}  // namespace kpdm
