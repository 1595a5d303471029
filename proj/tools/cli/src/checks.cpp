#include "kpdm_cli/checks.hpp"

#include "kpdm_cli/app.hpp"

#include "kpdm/classical_sim.hpp"
#include "kpdm/errors.hpp"
#include "kpdm/kappa_core.hpp"
#include "kpdm/kappa_fourier.hpp"
#include "kpdm/osc_analytic.hpp"
#include "kpdm/quadrature.hpp"
#include "kpdm/spectral_solver.hpp"
#include "kpdm/well_analytic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <unistd.h>

namespace kpdm::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

Check make_check(std::string name, double measured, double threshold) {
    return {std::move(name), measured, threshold, std::isfinite(measured) && measured <= threshold};
}

MassProfile unit_mass(double kappa) { return {1.0, DeformationParameter(kappa)}; }

// Uniform double in [lo, hi) from the top 53 bits; std distributions are not
// portable across standard libraries.
double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

template <class F>
double real_line_integral(F f) {
    return integrate([&](double t) { return f(std::sinh(t)) * std::cosh(t); }, -40.0, 40.0,
                     {1e-11, 0.0, 20, 80})
        .value;
}

// --- 1 ---------------------------------------------------------------------

CriterionReport algebra() {
    CriterionReport r{1, "kappa-algebra identities", {}, 0.0};
    const auto s = algebra_check(10000, 20240601, 2.0, 5.0);
    r.checks.push_back(make_check("inverse pairs, max rel error", s.max_inverse_error, 1e-12));
    r.checks.push_back(make_check("group law, max rel error", s.max_group_error, 1e-12));
    r.checks.push_back(make_check("evenness in kappa, max abs difference", s.max_evenness_error, 0.0));
    r.checks.push_back(make_check("identities failed out of " + std::to_string(s.checks),
                                  static_cast<double>(s.failures), 0.0));
    return r;
}

// --- 2 ---------------------------------------------------------------------

CriterionReport well_spectrum() {
    CriterionReport r{2, "well spectrum, analytic vs finite differences", {}, 0.0};
    const auto pot = PotentialSpec::infinite_well(1.0);
    double worst_deformed = 0.0;
    double worst_original = 0.0;
    for (double kL : {0.0, 0.5, 1.0, 3.0}) {
        const auto pr = unit_mass(kL);
        const WellSpec ws(1.0, pr.kappa);
        const auto d = solve_extrapolated(pot, pr, natural_grid(pot, pr, Frame::x_kappa, 401), 5);
        const auto o = solve_extrapolated(pot, pr, natural_grid(pot, pr, Frame::x, 401), 5);
        for (int n = 1; n <= 5; ++n) {
            worst_deformed = std::max(worst_deformed, rel_err(d.energies[n - 1], energy(ws, n)));
            worst_original = std::max(worst_original, rel_err(o.energies[n - 1], energy(ws, n)));
        }
    }
    r.checks.push_back(make_check("deformed frame, max rel error n<=5", worst_deformed, 1e-6));
    r.checks.push_back(make_check("original frame, max rel error n<=5", worst_original, 1e-6));
    return r;
}

// --- 3, 4 ------------------------------------------------------------------

CriterionReport oscillator_spectrum() {
    CriterionReport r{3, "oscillator spectrum, exact vs Poschl-Teller solve", {}, 0.0};
    double worst = 0.0;
    double count_mismatch = 0.0;
    for (int nu : {4, 5, 10}) {
        const auto os = OscillatorSpec::from_nu(nu);
        const MassProfile pr{1.0, os.kappa()};
        const auto ts = solve_oscillator_truncated(1.0, pr, nu);
        for (int n = 0; n < nu; ++n) {
            worst = std::max(worst, rel_err(ts.spectrum.energies[n], energy(os, n)));
        }
        count_mismatch += std::abs(ts.bound_count - nu) + std::abs(os.bound_state_count() - nu);
    }
    r.checks.push_back(make_check("max rel error over all bound n, nu in {4,5,10}", worst, 1e-6));
    r.checks.push_back(make_check("bound-state count mismatches", count_mismatch, 0.0));
    return r;
}

CriterionReport wkb_identity() {
    CriterionReport r{4, "exact minus WKB levels", {}, 0.0};
    double worst = 0.0;
    for (double omega0 : {0.5, 1.0, 2.0}) {
        for (int i = 0; i <= 30; ++i) {
            const OscillatorSpec s(omega0, DeformationParameter(0.05 * i / std::sqrt(1.0 / omega0)));
            const int top = std::min(s.bound_state_count(), 12);
            for (int n = 0; n < top; ++n) {
                const double diff = energy(s, n) - wkb_energy(s, n);
                const double expect = (s.omega_kappa() - s.omega0()) * (n + 0.5) - s.kappa().squared() / 8.0;
                const double scale = std::max({std::abs(energy(s, n)), std::abs(wkb_energy(s, n)), omega0});
                worst = std::max(worst, std::abs(diff - expect) / (scale * kEps));
            }
        }
    }
    r.checks.push_back(make_check("max |difference - identity| in ulps of the level", worst, 4.0));
    return r;
}

// --- 5 ---------------------------------------------------------------------

CriterionReport classical_limits() {
    CriterionReport r{5, "quantum moments approach classical ones", {}, 0.0};
    {
        const WellSpec w(1.0, DeformationParameter(3.0));
        const int n = 200;
        const auto q = moments(w, n, {1e-10, 0.0, 20, 400});
        const auto c = well_classical_moments(1.0, energy(w, n), unit_mass(3.0));
        const double worst = std::max({rel_err(q.mean_x, c.mean_x), rel_err(q.mean_x2, c.mean_x2),
                                       rel_err(q.mean_p2, c.mean_p2)});
        r.checks.push_back(make_check("well kL=3 n=200: <x>, <x^2>, <p^2> max rel", worst, 1e-3));
    }
    {
        const auto s = OscillatorSpec::from_nu(200);
        const int n = 150;
        const MassProfile pr{1.0, s.kappa()};
        const auto orbit = oscillator_orbit_from_energy(energy(s, n), 1.0, pr);
        const auto c = oscillator_classical_moments(orbit.A0, 1.0, pr);
        const auto q = moments(s, n);
        const auto split = energy_split(s, n);
        const auto v = virial_split(orbit.A0, 1.0, pr);
        const double worst = std::max(
            {rel_err(q.mean_x2, c.mean_x2), rel_err(q.mean_p2, c.mean_p2), rel_err(split.T, v.T_bar)});
        r.checks.push_back(make_check("oscillator nu=200 n=150: <x^2>, <p^2>, <T> max rel", worst, 1e-3));
    }
    return r;
}

// --- 6 ---------------------------------------------------------------------

CriterionReport uncertainty() {
    CriterionReport r{6, "uncertainty products", {}, 0.0};
    double well_min = INFINITY;
    double worst_argmin = 0.0;
    for (int n = 1; n <= 3; ++n) {
        double best = INFINITY;
        double best_kL = 0.0;
        for (int i = 0; i <= 300; ++i) {
            const double kL = 0.01 * i;
            const auto m = moments(WellSpec(1.0, DeformationParameter(kL)), n);
            const double prod = m.dx * m.dp;
            well_min = std::min(well_min, prod);
            if (prod < best) {
                best = prod;
                best_kL = kL;
            }
        }
        worst_argmin = std::max(worst_argmin, best_kL);
    }
    r.checks.push_back(make_check("well: 1/2 - min dx dp over kL in [0,3], n<=3", 0.5 - well_min, 0.0));
    r.checks.push_back(make_check("well: location of the dx dp minimum (largest over n=1,2,3)",
                                  worst_argmin, 0.0));

    std::vector<double> grid;
    for (int i = -100; i <= 100; ++i) {
        grid.push_back(0.01 * i);
    }
    const auto rows = uncertainty_scan(grid, {0, 1, 2, 3});
    double osc_min = INFINITY;
    double at_zero = 0.0;
    double asym = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& a = rows[i];
        const auto& b = rows[rows.size() - 1 - (i / 4) * 4 - (3 - i % 4)];
        if (a.flagged != b.flagged) {
            asym = INFINITY;
            continue;
        }
        if (a.flagged) {
            continue;
        }
        osc_min = std::min(osc_min, a.product);
        asym = std::max(asym, std::abs(a.product - b.product));
        if (a.kappa_a0 == 0.0) {
            at_zero = std::max(at_zero, std::abs(a.product - (a.n + 0.5)));
        }
    }
    r.checks.push_back(make_check("oscillator: 1/2 - min dx dp over ka0 in [-1,1], n<=3", 0.5 - osc_min, 0.0));
    r.checks.push_back(make_check("oscillator: |dx dp - (n+1/2)| at ka0=0", at_zero, 1e-10));
    r.checks.push_back(make_check("oscillator: max |P(ka0) - P(-ka0)|", asym, 0.0));
    return r;
}

// --- 7, 8 ------------------------------------------------------------------

CriterionReport trajectories() {
    CriterionReport r{7, "classical trajectories", {}, 0.0};
    {
        const double kappa = 0.8;
        const double v0 = 1.3;
        const auto pr = unit_mass(kappa);
        const auto traj = integrate(pr, PotentialSpec::free(), {0.0, v0, 0.0}, 1e-3, 5.0 / (v0 * kappa));
        double worst = 0.0;
        for (const auto& s : traj.samples) {
            const double expect = free_trajectory(v0, pr.kappa, s.t);
            if (expect != 0.0) {
                worst = std::max(worst, rel_err(s.x, expect));
            }
        }
        r.checks.push_back(make_check("free particle vs ln_kappa(exp(v0 t)), max rel", worst, 1e-8));
    }
    double worst_orbit = 0.0;
    double worst_drift = 0.0;
    for (double kA : {0.3, 0.5, 0.9}) {
        const auto pr = unit_mass(kA);
        const auto orbit = oscillator_orbit_from_amplitude(1.0, 1.0, pr);
        const double period = orbit.period();
        const auto traj = integrate(pr, PotentialSpec::ml_oscillator(1.0), oscillator_orbit_state(orbit, pr, 0.0),
                                    period / 1000.0, 10.0 * period);
        for (const auto& s : traj.samples) {
            worst_orbit = std::max(worst_orbit,
                                   std::abs(s.x - orbit.A_kappa * std::cos(orbit.Omega_kappa * s.t)) / orbit.A_kappa);
        }
        worst_drift = std::max(worst_drift, traj.energy_drift);
    }
    r.checks.push_back(make_check("oscillator vs A_kappa cos(Omega_kappa t), 10 periods, max err / A_kappa",
                                  worst_orbit, 1e-6));
    r.checks.push_back(make_check("energy drift", worst_drift, 1e-8));

    double flips = 0.0;
    const auto pot = PotentialSpec::ml_oscillator(1.0);
    {
        const auto pr = unit_mass(0.9);
        const auto orbit = oscillator_orbit_from_amplitude(1.0, 1.0, pr);
        flips += orbit.regime != OrbitRegime::bounded;
        const auto traj = integrate(pr, pot, {0.0, 1.0, 0.0}, 1e-3, 10.0 * orbit.period());
        double reach = 0.0;
        for (const auto& s : traj.samples) {
            reach = std::max(reach, std::abs(s.x));
        }
        flips += traj.halted || reach > orbit.A_kappa * (1.0 + 1e-6);
    }
    {
        const auto pr = unit_mass(1.1);
        flips += oscillator_orbit_from_amplitude(1.0, 1.0, pr).regime != OrbitRegime::unbounded;
        const auto traj = integrate(pr, pot, {0.0, 1.0, 0.0}, 1e-3, 200.0, {100, 1e6});
        flips += !traj.halted;
    }
    r.checks.push_back(make_check("regime misclassifications at kA0 in {0.9, 1.1}", flips, 0.0));
    return r;
}

CriterionReport virial() {
    CriterionReport r{8, "virial ratio along 200 periods", {}, 0.0};
    double worst = 0.0;
    for (double kA : {0.3, 0.5}) {
        const auto pr = unit_mass(kA);
        const auto pot = PotentialSpec::ml_oscillator(1.0);
        const auto orbit = oscillator_orbit_from_amplitude(1.0, 1.0, pr);
        const double period = orbit.period();
        const auto traj = integrate(pr, pot, oscillator_orbit_state(orbit, pr, 0.0), period / 500.0, 200.0 * period);
        const auto split = trajectory_energy_split(traj, pr, pot);
        worst = std::max(worst, rel_err(split.V_bar / split.T_bar, 1.0 / std::sqrt(1.0 - kA * kA)));
    }
    r.checks.push_back(make_check("V/T vs 1/sqrt(1 - kappa^2 A0^2), max rel", worst, 1e-3));
    return r;
}

// --- 9 ---------------------------------------------------------------------

CriterionReport fourier() {
    CriterionReport r{9, "deformed Fourier series and transform", {}, 0.0};
    const WellSpec w(1.0, DeformationParameter(1.0));
    const int Ns[] = {1, 2, 5, 50};
    double violations = 0.0;
    double consistency = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double R = unit_series_error(w, Ns[i]);
        if (i > 0 && !(R < unit_series_error(w, Ns[i - 1]))) {
            violations += 1.0;
        }
        // The same error from the generic sine series: l = 0..N are the odd
        // harmonics up to 2N + 1.
        const auto s = sine_series(w, [](double) { return 1.0; }, 2 * Ns[i] + 1);
        consistency = std::max(consistency, rel_err(s.R_of_N, R));
    }
    r.checks.push_back(make_check("R(N) strict-decrease violations over N in {1,2,5,50}", violations, 0.0));
    r.checks.push_back(make_check("R(50) / R(1)", unit_series_error(w, 50) / unit_series_error(w, 1), 1e-2));
    r.checks.push_back(make_check("R(N) closed form vs quadrature, max rel", consistency, 1e-6));

    double parseval = 0.0;
    for (double kL : {0.0, 1.0, 3.0}) {
        const WellSpec ws(1.0, DeformationParameter(kL));
        for (auto f : {+[](double x) { return x * (1.0 - x); },
                       +[](double x) { return x * x * (1.0 - x) * std::exp(x); }}) {
            // The residual at order N is the truncation tail, O(N^-5) here.
            parseval = std::max(parseval, parseval_residual(ws, sine_series(ws, f, 160)));
        }
    }
    r.checks.push_back(make_check("deformed Parseval residual, smooth functions", parseval, 1e-8));

    double round_trip = 0.0;
    for (int n : {1, 2}) {
        auto psi = [&](double x) { return std::complex<double>(eigenfunction(w, n, x)); };
        for (double k : {-7.0, 0.5, 3.0, 11.0}) {
            const auto g = inverse_transform(psi, w.kappa(), k, 0.0, 1.0);
            const auto exact = momentum_amplitude(w, n, k);
            round_trip = std::max(round_trip, std::abs(g - exact) / std::abs(exact));
        }
        for (double x : {0.2, 0.55}) {
            const auto back = forward_transform([&](double k) { return momentum_amplitude(w, n, k); },
                                                w.kappa(), x, 100.0);
            round_trip = std::max(round_trip, std::abs(back.value - psi(x)) / std::abs(psi(x)));
        }
    }
    r.checks.push_back(make_check("transform round trip on well states, max rel", round_trip, 1e-6));
    return r;
}

// --- 10 --------------------------------------------------------------------

// psi_n' for the well from the closed-form eigenfunction, written out here so
// the quadrature oracle does not share code with the moment formulas.
double well_derivative(const WellSpec& w, int n, double x) {
    const double k2 = w.kappa().squared();
    const double s = std::sqrt(1.0 + k2 * x * x);
    const double phase = w.k_n(n) * deformed_coordinate(x, w.kappa());
    const double c = std::sqrt(2.0 / w.L_kappa());
    return c * (-0.5 * k2 * x * std::pow(s, -2.5) * std::sin(phase) + std::pow(s, -1.5) * w.k_n(n) * std::cos(phase));
}

CriterionReport moment_formulas() {
    CriterionReport r{10, "closed-form moments vs direct quadrature", {}, 0.0};
    double well_x = 0.0;
    double well_p2_four_integral = 0.0;
    double well_p2_parts = 0.0;
    const QuadratureOptions q{1e-12, 0.0, 20, 16};
    for (double kL : {0.5, 1.0, 3.0}) {
        const WellSpec w(1.0, DeformationParameter(kL));
        for (int n = 1; n <= 3; ++n) {
            auto rho = [&](double x) { return std::pow(eigenfunction(w, n, x), 2); };
            const double x1 = integrate([&](double x) { return x * rho(x); }, 0.0, 1.0, q).value;
            const double x2 = integrate([&](double x) { return x * x * rho(x); }, 0.0, 1.0, q).value;
            const double p2 =
                integrate([&](double x) { return std::pow(well_derivative(w, n, x), 2); }, 0.0, 1.0, q).value;
            const auto m = moments(w, n);
            well_x = std::max({well_x, rel_err(m.mean_x, x1), rel_err(m.mean_x2, x2)});
            well_p2_four_integral = std::max(well_p2_four_integral, rel_err(p2_four_integral_form(w, n), p2));
            well_p2_parts = std::max(well_p2_parts, rel_err(p2_exact(w, n), p2));
        }
    }
    r.checks.push_back(make_check("well <x>, <x^2> closed forms, max rel", well_x, 1e-6));
    r.checks.push_back(make_check("well <p^2> four-integral I_{j,l} combination, max rel", well_p2_four_integral, 1e-6));
    r.checks.push_back(make_check("well <p^2> integrated by parts, max rel", well_p2_parts, 1e-6));

    double osc = 0.0;
    for (int nu : {4, 5, 10}) {
        const auto s = OscillatorSpec::from_nu(nu);
        for (int n = 0; n + 1 < nu; ++n) {
            auto psi = [&](double x) { return eigenfunction(s, n, x); };
            auto dpsi = [&](double x) {
                const double h = 1e-3 * std::max(1.0, std::abs(x));
                return (psi(x - 2 * h) - 8 * psi(x - h) + 8 * psi(x + h) - psi(x + 2 * h)) / (12.0 * h);
            };
            const double kappa2 = s.kappa().squared();
            const double x2 = real_line_integral([&](double x) { return x * x * psi(x) * psi(x); });
            const double p2 = real_line_integral([&](double x) { return dpsi(x) * dpsi(x); });
            const double V = real_line_integral(
                [&](double x) { return 0.5 * x * x / (1.0 + kappa2 * x * x) * psi(x) * psi(x); });
            const auto m = moments(s, n);
            osc = std::max({osc, rel_err(m.mean_x2, x2), rel_err(m.mean_p2, p2), rel_err(x2_explicit(s, n), x2),
                            rel_err(p2_explicit(s, n), p2), rel_err(potential_expectation(s, n), V)});
        }
    }
    r.checks.push_back(make_check("oscillator <x^2>, <p^2>, <V> (z = 2nu+1 forms), max rel", osc, 1e-6));
    return r;
}

// --- 11 --------------------------------------------------------------------

std::vector<RunConfig> replay_configs() {
    auto cfg = [](Command c, std::map<std::string, std::string> p) {
        RunConfig r;
        r.command = c;
        r.parameters = std::move(p);
        return r;
    };
    return {
        cfg(Command::well, {{"kappaL", "0,0.5,1,3"}, {"n", "1..6"}}),
        cfg(Command::well, {{"quantity", "densities"}, {"kappaL", "0,1,3"}, {"n", "1..3"}}),
        cfg(Command::well, {{"quantity", "momentum"}, {"kappaL", "1"}, {"n", "1..3"}}),
        cfg(Command::well, {{"quantity", "uncertainty"}, {"kappaL", "0:0.1:3"}, {"n", "1..3"}}),
        cfg(Command::fourier, {{"kappaL", "1"}, {"N", "1,2,5,50"}}),
        cfg(Command::classical, {{"kappa-A0", "0,0.5,0.9,1,1.1"}}),
        cfg(Command::oscillator, {{"quantity", "all"}, {"nu", "4,5,10,inf"}, {"n", "0..3"}}),
        cfg(Command::sweep, {{"system", "oscillator"}, {"kappa-a0", "-1:0.1:1"}, {"threads", "4"}}),
        cfg(Command::algebra_check, {}),
        cfg(Command::crosscheck, {{"suite", "all"}}),
    };
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

CriterionReport determinism() {
    namespace fs = std::filesystem;
    CriterionReport r{11, "byte-identical outputs on replay", {}, 0.0};
    const fs::path root = fs::temp_directory_path() / ("kpdm-replay-" + std::to_string(::getpid()));
    double mismatched = 0.0;
    double compared = 0.0;
    std::ostringstream sink;
    const auto configs = replay_configs();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (Format format : {Format::csv, Format::json}) {
            std::vector<std::string> files[2];
            for (int pass = 0; pass < 2; ++pass) {
                auto c = configs[i];
                c.format = format;
                c.output = (root / std::to_string(pass) / std::to_string(i)).string() + "/";
                const auto result = compute(c);
                files[pass] = write_document(c, result.document, sink);
            }
            if (files[0].size() != files[1].size() || files[0].empty()) {
                mismatched += 1.0;
                continue;
            }
            for (std::size_t k = 0; k < files[0].size(); ++k) {
                compared += 1.0;
                mismatched += slurp(files[0][k]) != slurp(files[1][k]);
            }
        }
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    r.checks.push_back(make_check("files differing between two runs (of " +
                                      std::to_string(static_cast<long>(compared)) + ")",
                                  mismatched, 0.0));
    return r;
}

}  // namespace

bool CriterionReport::passed() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string CriterionReport::summary_line() const {
    std::string out = passed() ? "PASS" : "FAIL";
    out += " " + std::to_string(id) + " " + title + ":";
    char buf[64];
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        std::snprintf(buf, sizeof buf, " %.3g (tol %.3g)", c.measured, c.threshold);
        out += (i ? ";" : "") + std::string(" ") + c.name + buf + (c.passed ? "" : " FAILED");
    }
    std::snprintf(buf, sizeof buf, " [%.2f s]", seconds);
    return out + buf;
}

std::vector<int> suite_criteria(std::string_view suite) {
    if (suite == "all") {
        return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    }
    if (suite == "algebra") return {1};
    if (suite == "well") return {2};
    if (suite == "oscillator") return {3, 4};
    if (suite == "classical") return {5, 7, 8};
    if (suite == "uncertainty") return {6};
    if (suite == "fourier") return {9};
    if (suite == "moments") return {10};
    if (suite == "determinism") return {11};
    throw ConfigError("unknown suite '" + std::string(suite) +
                      "' (all, algebra, well, oscillator, classical, uncertainty, fourier, moments, determinism)");
}

CriterionReport run_criterion(int id) {
    const auto start = std::chrono::steady_clock::now();
    CriterionReport r;
    switch (id) {
        case 1: r = algebra(); break;
        case 2: r = well_spectrum(); break;
        case 3: r = oscillator_spectrum(); break;
        case 4: r = wkb_identity(); break;
        case 5: r = classical_limits(); break;
        case 6: r = uncertainty(); break;
        case 7: r = trajectories(); break;
        case 8: r = virial(); break;
        case 9: r = fourier(); break;
        case 10: r = moment_formulas(); break;
        case 11: r = determinism(); break;
        default: throw ConfigError("no criterion " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

AlgebraStats algebra_check(long samples, std::uint64_t seed, double kappa_range, double u_range, double tol) {
    std::mt19937_64 gen(seed);
    AlgebraStats s;
    auto record = [&](double err, double& slot) {
        slot = std::max(slot, err);
        ++s.checks;
        s.failures += !(err <= tol);
    };
    for (long i = 0; i < samples; ++i) {
        const auto k = DeformationParameter(uniform(gen, -kappa_range, kappa_range));
        const auto mk = DeformationParameter(-k.value());
        const double a = uniform(gen, -u_range, u_range);
        const double b = uniform(gen, -u_range, u_range);
        const double pa = std::exp(uniform(gen, -0.5 * u_range, 0.5 * u_range));
        const double pb = std::exp(uniform(gen, -0.5 * u_range, 0.5 * u_range));

        // klog(kexp(a)) has absolute error ~eps independent of a, hence the floor of one.
        record(std::abs(klog(kexp(a, k), k) - a) / std::max(std::abs(a), 1.0), s.max_inverse_error);
        record(rel_err(kexp(klog(pa, k), k), pa), s.max_inverse_error);
        record(rel_err(kexp(a, k) * kexp(-a, k), 1.0), s.max_inverse_error);
        record(rel_err(kexp(a, k) * kexp(b, k), kexp(kadd(a, b, k), k)), s.max_group_error);
        const double la = klog(pa, k);
        const double lb = klog(pb, k);
        // The sum may cancel; scale by the size of the terms.
        record(std::abs(klog(pa * pb, k) - kadd(la, lb, k)) / std::max(std::abs(la) + std::abs(lb), 1e-300),
               s.max_group_error);
        const double even = std::max({std::abs(kexp(a, k) - kexp(a, mk)), std::abs(klog(pa, k) - klog(pa, mk)),
                                      std::abs(kadd(a, b, k) - kadd(b, a, k))});
        s.max_evenness_error = std::max(s.max_evenness_error, even);
        ++s.checks;
        s.failures += even != 0.0;
    }
    return s;
}

}  // namespace kpdm::cli
