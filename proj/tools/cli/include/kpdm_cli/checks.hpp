#pragma once

// Analytic-versus-oracle checks behind `kpdm crosscheck` and the acceptance
// binary. Each criterion bundles named comparisons with pinned thresholds.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kpdm::cli {

struct Check {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct CriterionReport {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    /// Wall time; reported but never written to output files.
    double seconds = 0.0;

    bool passed() const;
    /// "PASS 2 well spectrum ..." style one-liner, checks summarized.
    std::string summary_line() const;
};

/// Criteria 1..10 are comparisons; 11 is the determinism replay.
inline constexpr int kCriterionCount = 11;

/// Criterion ids for a suite name: all, algebra, well, oscillator, classical,
/// uncertainty, fourier, moments, determinism. ConfigError for unknown names.
/// `all` covers 1..10; determinism replays whole commands and is separate.
std::vector<int> suite_criteria(std::string_view suite);

CriterionReport run_criterion(int id);

struct AlgebraStats {
    long checks = 0;
    long failures = 0;
    double max_inverse_error = 0.0;
    double max_group_error = 0.0;
    /// Largest |f(kappa) - f(-kappa)|; exact evenness gives zero.
    double max_evenness_error = 0.0;
};

/// Randomized identity checks of the kappa algebra at relative tolerance
/// `tol`: inverse pair, group law of kexp/klog, evenness in kappa and
/// commutativity of kadd. `kappa_range` and `u_range` bound the samples.
AlgebraStats algebra_check(long samples, std::uint64_t seed, double kappa_range, double u_range,
                           double tol = 1e-12);

}  // namespace kpdm::cli
