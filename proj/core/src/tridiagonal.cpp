#include "kpdm/tridiagonal.hpp"

#include "kpdm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace kpdm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymTridiagonal& t) {
    double m = 1.0;
    for (double e : t.off) {
        m = std::max(m, e * e);
    }
    return std::numeric_limits<double>::min() * m;
}

// LU of (T - shift I) with partial pivoting, LAPACK gttrf layout.
struct BandedLU {
    std::vector<double> dl, d, du, du2;
    std::vector<unsigned char> swapped;

    BandedLU(const SymTridiagonal& t, double shift) {
        const std::size_t n = t.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = t.diag[i] - shift;
        }
        dl = t.off;
        du = t.off;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 1 ? n - 1 : 0, 0);

        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            scale = std::max(scale, std::abs(d[i]));
        }
        for (double e : t.off) {
            scale = std::max(scale, std::abs(e));
        }
        const double tiny = kEps * std::max(scale, std::numeric_limits<double>::min());

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) {
                    d[i] = tiny;
                }
                const double l = dl[i] / d[i];
                dl[i] = l;
                d[i + 1] -= l * du[i];
            } else {
                const double l = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = l;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - l * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -l * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (n > 0 && d[n - 1] == 0.0) {
            d[n - 1] = tiny;
        }
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            } else {
                b[i + 1] -= dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for (std::size_t i = n > 2 ? n - 2 : 0; i-- > 0;) {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
    }
};

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

}  // namespace

int count_below(const SymTridiagonal& t, double shift) {
    const std::size_t n = t.size();
    if (n == 0) {
        return 0;
    }
    const double floor = pivot_floor(t);
    int count = 0;
    double d = t.diag[0] - shift;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(d) < floor) {
            d = -floor;
        }
        if (d < 0.0) {
            ++count;
        }
        if (i + 1 == n) {
            break;
        }
        d = (t.diag[i + 1] - shift) - t.off[i] * t.off[i] / d;
    }
    return count;
}

void gershgorin_bounds(const SymTridiagonal& t, double& lo, double& hi) {
    const std::size_t n = t.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) {
            r += std::abs(t.off[i - 1]);
        }
        if (i + 1 < n) {
            r += std::abs(t.off[i]);
        }
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
}

std::vector<double> eigenvalues_by_index(const SymTridiagonal& t, int first, int count) {
    const int n = static_cast<int>(t.size());
    if (first < 0 || count < 0 || first + count > n) {
        throw DomainError("eigenvalues_by_index: index range outside matrix order");
    }
    double glo = 0.0;
    double ghi = 0.0;
    gershgorin_bounds(t, glo, ghi);
    const double span = std::max(std::abs(glo), std::abs(ghi));
    glo -= 2.0 * kEps * span + std::numeric_limits<double>::min();
    ghi += 2.0 * kEps * span + std::numeric_limits<double>::min();

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    double floor = glo;
    for (int j = first; j < first + count; ++j) {
        double lo = floor;
        double hi = ghi;
        for (int it = 0; it < 256; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) {
                break;
            }
            if (count_below(t, mid) > j) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        const double lambda = 0.5 * (lo + hi);
        values.push_back(lambda);
        floor = lo;
    }
    return values;
}

std::vector<double> eigenvector(const SymTridiagonal& t, double lambda,
                                const std::vector<std::vector<double>>& previous) {
    const std::size_t n = t.size();
    BandedLU lu(t, lambda);

    std::mt19937 gen(12345u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(gen);
    }

    auto orthogonalize = [&](std::vector<double>& w) {
        for (const auto& q : previous) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += q[i] * w[i];
            }
            for (std::size_t i = 0; i < n; ++i) {
                w[i] -= dot * q[i];
            }
        }
    };

    for (int it = 0; it < 4; ++it) {
        orthogonalize(v);
        const double nv = norm2(v);
        for (double& x : v) {
            x /= nv;
        }
        lu.solve(v);
    }
    orthogonalize(v);
    const double nv = norm2(v);
    if (!(nv > 0.0) || !std::isfinite(nv)) {
        throw NumericError("eigenvector: inverse iteration produced a degenerate vector", nv);
    }
    for (double& x : v) {
        x /= nv;
    }
    return v;
}

TridiagonalEigen lowest_eigenpairs(const SymTridiagonal& t, int count) {
    TridiagonalEigen out;
    out.values = eigenvalues_by_index(t, 0, count);
    out.vectors.reserve(out.values.size());
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        // Only neighbours that are numerically close need projecting out.
        std::vector<std::vector<double>> close;
        for (std::size_t i = 0; i < j; ++i) {
            const double gap = std::abs(out.values[j] - out.values[i]);
            if (gap <= 1e-8 * std::max(1.0, std::abs(out.values[j]))) {
                close.push_back(out.vectors[i]);
            }
        }
        out.vectors.push_back(eigenvector(t, out.values[j], close));
    }
    return out;
}

std::vector<double> multiply(const SymTridiagonal& t, const std::vector<double>& x) {
    const std::size_t n = t.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = t.diag[i] * x[i];
        if (i > 0) {
            s += t.off[i - 1] * x[i - 1];
        }
        if (i + 1 < n) {
            s += t.off[i] * x[i + 1];
        }
        y[i] = s;
    }
    return y;
}

}  // namespace kpdm
