#pragma once

#include <vector>

namespace kpdm {

enum class Frame { x, x_kappa };

/// Uniform grid with Dirichlet ends. n_points counts both boundary nodes,
/// so the discretized operator has n_points - 2 unknowns.
struct GridSpec {
    Frame frame = Frame::x;
    double lo = 0.0;
    double hi = 1.0;
    int n_points = 0;

    static constexpr int kMinPoints = 16;

    double spacing() const noexcept { return (hi - lo) / (n_points - 1); }
    double node(int i) const noexcept { return lo + spacing() * i; }
    int interior() const noexcept { return n_points - 2; }

    /// Interior nodes 1 .. n_points-2.
    std::vector<double> interior_nodes() const;

    /// Same interval with the spacing halved.
    GridSpec refined() const noexcept { return GridSpec{frame, lo, hi, 2 * n_points - 1}; }

    /// Throws ConfigError for lo >= hi, non-finite ends or fewer than kMinPoints nodes.
    void validate() const;

    bool operator==(const GridSpec& o) const noexcept {
        return frame == o.frame && lo == o.lo && hi == o.hi && n_points == o.n_points;
    }
    bool operator!=(const GridSpec& o) const noexcept { return !(*this == o); }
};

const char* to_string(Frame f);

}  // namespace kpdm
