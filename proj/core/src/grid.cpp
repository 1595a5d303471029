#include "kpdm/grid.hpp"

#include "kpdm/errors.hpp"

#include <cmath>
#include <string>

namespace kpdm {

std::vector<double> GridSpec::interior_nodes() const {
    std::vector<double> out(static_cast<std::size_t>(interior()));
    for (int i = 0; i < interior(); ++i) {
        out[static_cast<std::size_t>(i)] = node(i + 1);
    }
    return out;
}

void GridSpec::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw ConfigError("grid: need finite lo < hi");
    }
    if (n_points < kMinPoints) {
        throw ConfigError("grid: " + std::to_string(n_points) + " points is below the minimum of " +
                          std::to_string(kMinPoints));
    }
}

const char* to_string(Frame f) {
    return f == Frame::x ? "x" : "x_kappa";
}

}  // namespace kpdm
