#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for selected
// eigenvalues, inverse iteration for the matching eigenvectors.

#include <cstddef>
#include <vector>

namespace kpdm {

struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples rows i and i+1

    std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below `shift`.
int count_below(const SymTridiagonal& t, double shift);

/// Gershgorin interval containing the whole spectrum.
void gershgorin_bounds(const SymTridiagonal& t, double& lo, double& hi);

/// Eigenvalues with indices [first, first + count), ascending, by bisection
/// to full double precision.
std::vector<double> eigenvalues_by_index(const SymTridiagonal& t, int first, int count);

/// Unit eigenvector (Euclidean norm) for an accurate eigenvalue `lambda`.
/// `previous` vectors are projected out, which only matters for near-degenerate pairs.
std::vector<double> eigenvector(const SymTridiagonal& t, double lambda,
                                const std::vector<std::vector<double>>& previous = {});

struct TridiagonalEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

TridiagonalEigen lowest_eigenpairs(const SymTridiagonal& t, int count);

/// y = T x.
std::vector<double> multiply(const SymTridiagonal& t, const std::vector<double>& x);

}  // namespace kpdm
