#include "kpdm_cli/app.hpp"
#include "kpdm_cli/checks.hpp"

#include "kpdm/classical_sim.hpp"
#include "kpdm/errors.hpp"
#include "kpdm/kappa_fourier.hpp"
#include "kpdm/legendre.hpp"
#include "kpdm/osc_analytic.hpp"
#include "kpdm/well_analytic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

namespace kpdm::cli {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError(what);
    }
}

void require_known(const RunConfig& c, std::initializer_list<const char*> keys) {
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [key, value] : c.parameters) {
        require(known.count(key) != 0,
                std::string("unknown parameter --") + key + " for " + to_string(c.command));
    }
}

std::vector<std::string> quantities(const RunConfig& c, const std::string& fallback,
                                    std::initializer_list<const char*> allowed) {
    std::vector<std::string> out;
    std::string text = c.text("quantity", fallback);
    if (text == "all") {
        return {allowed.begin(), allowed.end()};
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = std::min(text.find(',', start), text.size());
        const auto item = text.substr(start, pos - start);
        require(std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return item == a; }) !=
                    allowed.end(),
                "--quantity: unknown value '" + item + "'");
        out.push_back(item);
        start = pos + 1;
    }
    return out;
}

bool wants(const std::vector<std::string>& q, const char* name) {
    return std::find(q.begin(), q.end(), name) != q.end();
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    }
    return out;
}

// Evaluates f(i) for i < count on a worker pool; results stay in index order so
// the output does not depend on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& f) {
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };
    const auto n = static_cast<std::size_t>(std::max(1, threads));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(n, count); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

int thread_count(const RunConfig& c) {
    const int t = c.integer("threads", 0);
    require(t >= 0, "--threads must be >= 0");
    return t > 0 ? t : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// --- algebra-check ---------------------------------------------------------

CommandResult algebra_command(const RunConfig& c) {
    require_known(c, {"samples", "seed", "kappa-range", "u-range", "tol"});
    const int samples = c.integer("samples", 10000);
    const int seed = c.integer("seed", 20240601);
    const double kr = c.real("kappa-range", 2.0);
    const double ur = c.real("u-range", 5.0);
    const double tol = c.real("tol", 1e-12);
    require(samples > 0, "--samples must be positive");
    require(seed >= 0, "--seed must be non-negative");
    require(std::isfinite(kr) && kr >= 0.0, "--kappa-range must be finite and >= 0");
    require(std::isfinite(ur) && ur > 0.0 && ur <= 300.0, "--u-range must lie in (0, 300]");
    require(tol > 0.0, "--tol must be positive");

    const auto s = algebra_check(samples, static_cast<std::uint64_t>(seed), kr, ur, tol);
    CommandResult out;
    out.document.header = config_echo(c);
    Table t("identities", {"checks", "failures", "max_inverse_rel", "max_group_rel", "max_evenness_abs"});
    t.add({static_cast<double>(s.checks), static_cast<double>(s.failures), s.max_inverse_error, s.max_group_error,
           s.max_evenness_error});
    out.document.tables.push_back(std::move(t));
    out.checks_passed = s.failures == 0;
    return out;
}

// --- well ------------------------------------------------------------------

CommandResult well_command(const RunConfig& c) {
    require_known(c, {"kappaL", "n", "L", "quantity", "points", "k-max"});
    const auto kLs = c.reals("kappaL", "0,0.5,1,3");
    const auto ns = c.integers("n", "1..6");
    const double L = c.real("L", 1.0);
    const int points = c.integer("points", 201);
    const double k_max = c.real("k-max", 40.0);
    const auto q = quantities(c, "energies", {"energies", "densities", "momentum", "uncertainty"});
    require(std::isfinite(L) && L > 0.0, "--L must be finite and positive");
    for (double kL : kLs) {
        require(std::isfinite(kL), "--kappaL values must be finite");
    }
    for (int n : ns) {
        require(n >= 1, "--n: well levels start at 1");
    }
    require(points >= 2, "--points must be >= 2");
    require(std::isfinite(k_max) && k_max > 0.0, "--k-max must be finite and positive");

    CommandResult out;
    out.document.header = config_echo(c);
    if (wants(q, "energies")) {
        Table t("energies", {"kappaL", "n", "E_over_eps0", "E"});
        for (double kL : kLs) {
            const WellSpec w(L, DeformationParameter(kL / L));
            for (int n : ns) {
                t.add({kL, double(n), energy_ratio(w, n), energy(w, n)});
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    if (wants(q, "densities")) {
        Table t("densities", {"kappaL", "n", "x", "rho", "rho_classical"});
        for (double kL : kLs) {
            const WellSpec w(L, DeformationParameter(kL / L));
            for (int n : ns) {
                for (double x : linspace(0.0, L, points)) {
                    t.add({kL, double(n), x, position_density(w, n, x), well_classical_density(L, w.kappa(), x)});
                }
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    if (wants(q, "momentum")) {
        Table t("momentum", {"kappaL", "n", "k", "gamma"});
        for (double kL : kLs) {
            const WellSpec w(L, DeformationParameter(kL / L));
            for (int n : ns) {
                for (double k : linspace(-k_max, k_max, points)) {
                    t.add({kL, double(n), k, momentum_density(w, n, k)});
                }
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    if (wants(q, "uncertainty")) {
        Table t("uncertainty", {"kappaL", "n", "dx", "dp", "dx_dp", "dk", "dx_dk"});
        for (double kL : kLs) {
            const WellSpec w(L, DeformationParameter(kL / L));
            for (int n : ns) {
                const auto m = moments(w, n);
                t.add({kL, double(n), m.dx, m.dp, m.dx * m.dp, m.dk, m.dx * m.dk});
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    return out;
}

// --- oscillator ------------------------------------------------------------

OscillatorSpec oscillator_from(double nu, double omega0) {
    return std::isinf(nu) ? OscillatorSpec(omega0, DeformationParameter(0.0)) : OscillatorSpec::from_nu(nu, omega0);
}

CommandResult oscillator_command(const RunConfig& c) {
    require_known(c, {"nu", "kappa-a0", "n", "omega0", "quantity", "points", "x-max", "scan"});
    require(!(c.has("nu") && c.has("kappa-a0")), "give either --nu or --kappa-a0, not both");
    const double omega0 = c.real("omega0", 1.0);
    require(std::isfinite(omega0) && omega0 > 0.0, "--omega0 must be finite and positive");
    std::vector<OscillatorSpec> specs;
    if (c.has("kappa-a0")) {
        for (double ka : c.reals("kappa-a0", "")) {
            require(std::isfinite(ka), "--kappa-a0 values must be finite");
            specs.emplace_back(omega0, DeformationParameter(ka * std::sqrt(omega0)));
        }
    } else {
        for (double nu : c.reals("nu", "4,5,10")) {
            require(nu > 0.0, "--nu values must be positive (inf for the undeformed oscillator)");
            specs.push_back(oscillator_from(nu, omega0));
        }
    }
    const auto ns = c.integers("n", "0..3");
    const int points = c.integer("points", 241);
    const double x_max = c.real("x-max", 6.0);
    const auto q = quantities(c, "states", {"potential", "levels", "states", "uncertainty"});
    for (int n : ns) {
        require(n >= 0, "--n: oscillator levels start at 0");
    }
    require(points >= 2, "--points must be >= 2");
    require(std::isfinite(x_max) && x_max > 0.0, "--x-max must be finite and positive");
    if (wants(q, "states")) {
        for (const auto& s : specs) {
            require(s.kappa().is_zero() || s.integer_nu(),
                    "states need integer nu (got nu = " + format_real(s.nu()) + ")");
            for (int n : ns) {
                require(n < s.bound_state_count(), "states need n < nu (n = " + std::to_string(n) +
                                                       ", nu = " + format_real(s.nu()) + ")");
            }
        }
    }
    const auto scan = c.reals("scan", "-1:0.02:1");

    CommandResult out;
    out.document.header = config_echo(c);
    if (wants(q, "potential")) {
        Table t("potential", {"nu", "kappa_a0", "x", "V", "V_harmonic", "W"});
        for (const auto& s : specs) {
            const double k2 = s.kappa().squared();
            for (double xa : linspace(-x_max, x_max, points)) {
                const double x = xa * s.a0();
                const double vh = 0.5 * omega0 * omega0 * x * x;
                t.add({s.nu(), s.kappa_a0(), x, vh / (1.0 + k2 * x * x), vh, s.W()});
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    if (wants(q, "levels")) {
        Table t("levels", {"nu", "kappa_a0", "n", "E", "E_wkb", "W"});
        for (const auto& s : specs) {
            for (int n : ns) {
                if (n < s.bound_state_count()) {
                    t.add({s.nu(), s.kappa_a0(), double(n), energy(s, n), wkb_energy(s, n), s.W()});
                }
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    if (wants(q, "states")) {
        Table t("states", {"nu", "kappa_a0", "n", "x", "psi", "rho"});
        for (const auto& s : specs) {
            for (int n : ns) {
                for (double xa : linspace(-x_max, x_max, points)) {
                    const double x = xa * s.a0();
                    const double psi = eigenfunction(s, n, x);
                    t.add({s.nu(), s.kappa_a0(), double(n), x, psi, psi * psi});
                }
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    if (wants(q, "uncertainty")) {
        Table t("uncertainty", {"kappa_a0", "n", "nu", "dx", "dp", "dx_dp", "flagged"});
        t.notes.push_back("flagged = 1: level unbound or <x^2> divergent (nu - n <= 1)");
        for (const auto& row : uncertainty_scan(scan, ns, omega0)) {
            t.add({row.kappa_a0, double(row.n), row.nu, row.dx, row.dp, row.product, row.flagged ? 1.0 : 0.0});
        }
        out.document.tables.push_back(std::move(t));
    }
    return out;
}

// --- classical -------------------------------------------------------------

CommandResult classical_command(const RunConfig& c) {
    require_known(c, {"system", "kappa-A0", "A0", "omega0", "kappa", "v0", "L", "energy", "dt", "periods", "stride",
                      "t-max"});
    const std::string system = c.text("system", "oscillator");
    require(system == "oscillator" || system == "well" || system == "free",
            "--system must be oscillator, well or free");
    const double dt = c.real("dt", 1e-3);
    const int stride = c.integer("stride", 10);
    require(dt > 0.0 && std::isfinite(dt), "--dt must be finite and positive");
    require(stride >= 1, "--stride must be >= 1");

    CommandResult out;
    out.document.header = config_echo(c);
    Table phase("phase", {"param", "t", "x", "p", "x_kappa", "Pi_kappa"});
    auto record = [&](double param, const Trajectory& tr) {
        for (std::size_t i = 0; i < tr.samples.size(); ++i) {
            const auto& s = tr.samples[i];
            const auto& d = tr.deformed_samples[i];
            phase.add({param, s.t, s.x, s.p, d.x_kappa, d.Pi_kappa});
        }
    };

    if (system == "oscillator") {
        const auto kA = c.reals("kappa-A0", "0,0.5,0.9,1,1.1");
        const double A0 = c.real("A0", 1.0);
        const double omega0 = c.real("omega0", 1.0);
        const double periods = c.real("periods", 2.0);
        require(std::isfinite(A0) && A0 > 0.0, "--A0 must be finite and positive");
        require(std::isfinite(omega0) && omega0 > 0.0, "--omega0 must be finite and positive");
        require(periods > 0.0 && periods <= 1e4, "--periods must lie in (0, 1e4]");
        for (double v : kA) {
            require(std::isfinite(v) && v >= 0.0, "--kappa-A0 values must be finite and >= 0");
        }
        phase.notes.push_back("param = kappa A0; start at x = 0 with p = m0 omega0 A0");
        Table orbits("orbits", {"kappa_A0", "regime", "E", "W", "A_kappa", "Omega_kappa", "energy_drift", "halted",
                                "min_abs_Pi", "max_abs_Pi"});
        orbits.notes.push_back("regime: 0 bounded, 1 separatrix, 2 unbounded");
        const auto pot = PotentialSpec::ml_oscillator(omega0);
        for (double v : kA) {
            const MassProfile pr{1.0, DeformationParameter(v / A0)};
            const auto orbit = oscillator_orbit_from_amplitude(A0, omega0, pr);
            const double T = periods * 2.0 * kPi / (orbit.bounded() ? orbit.Omega_kappa : omega0);
            const auto tr = integrate(pr, pot, {0.0, omega0 * A0, 0.0}, dt, T, {stride, 1e6});
            record(v, tr);
            orbits.add({v, double(static_cast<int>(orbit.regime)), orbit.energy, orbit.W_kappa, orbit.A_kappa,
                        orbit.Omega_kappa, tr.energy_drift, tr.halted ? 1.0 : 0.0, tr.min_abs_Pi, tr.max_abs_Pi});
        }
        out.document.tables.push_back(std::move(phase));
        out.document.tables.push_back(std::move(orbits));
    } else if (system == "well") {
        const auto kLs = c.reals("kappa-A0", "0,1,3");
        const double L = c.real("L", 1.0);
        const double E = c.real("energy", 1.0);
        const double periods = c.real("periods", 2.0);
        require(std::isfinite(L) && L > 0.0, "--L must be finite and positive");
        require(std::isfinite(E) && E > 0.0, "--energy must be finite and positive");
        require(periods > 0.0 && periods <= 1e4, "--periods must lie in (0, 1e4]");
        phase.notes.push_back("param = kappa L; start at x = L/2 moving right");
        const auto pot = PotentialSpec::infinite_well(L);
        for (double kL : kLs) {
            require(std::isfinite(kL), "--kappa-A0 (kappa L for the well) must be finite");
            const MassProfile pr{1.0, DeformationParameter(kL / L)};
            const double x0 = 0.5 * L;
            const double p0 = std::sqrt(2.0 * mass_at(pr, x0) * E);
            // Round trip in the flat coordinate: 2 L_kappa at speed sqrt(2E/m0).
            const double period = 2.0 * WellSpec(L, pr.kappa).L_kappa() / std::sqrt(2.0 * E);
            record(kL, integrate(pr, pot, {x0, p0, 0.0}, dt, periods * period, {stride, 1e150}));
        }
        out.document.tables.push_back(std::move(phase));
    } else {
        const double kappa = c.real("kappa", 1.0);
        const double v0 = c.real("v0", 1.0);
        const double t_max = c.real("t-max", 5.0);
        require(std::isfinite(kappa) && std::isfinite(v0), "--kappa and --v0 must be finite");
        require(t_max > 0.0 && std::isfinite(t_max), "--t-max must be finite and positive");
        const MassProfile pr{1.0, DeformationParameter(kappa)};
        const auto tr = integrate(pr, PotentialSpec::free(), {0.0, v0, 0.0}, dt, t_max, {stride, 1e150});
        Table t("free", {"t", "x", "x_exact", "p"});
        for (const auto& s : tr.samples) {
            t.add({s.t, s.x, free_trajectory(v0, pr.kappa, s.t), s.p});
        }
        out.document.tables.push_back(std::move(t));
    }
    return out;
}

// --- fourier ---------------------------------------------------------------

CommandResult fourier_command(const RunConfig& c) {
    require_known(c, {"kappaL", "L", "N", "points", "N-max"});
    const double kL = c.real("kappaL", 1.0);
    const double L = c.real("L", 1.0);
    const auto Ns = c.integers("N", "1,2,5,50");
    const int points = c.integer("points", 201);
    const int N_max = c.integer("N-max", 1000);
    require(std::isfinite(kL), "--kappaL must be finite");
    require(std::isfinite(L) && L > 0.0, "--L must be finite and positive");
    for (int N : Ns) {
        require(N >= 0, "--N values must be >= 0 (the sum runs over l = 0..N)");
    }
    require(points >= 2, "--points must be >= 2");
    require(N_max >= 1 && N_max <= 1000000, "--N-max must lie in [1, 1e6]");

    const WellSpec w(L, DeformationParameter(kL / L));
    CommandResult out;
    out.document.header = config_echo(c);
    Table sums("partial_sums", {"N", "x", "f_N"});
    sums.notes.push_back("f = 1 expanded in odd harmonics l = 0..N");
    for (int N : Ns) {
        for (double x : linspace(0.0, L, points)) {
            sums.add({double(N), x, unit_partial_sum(w, N, x)});
        }
    }
    Table err("error", {"N", "R"});
    for (int N = 1; N <= N_max; ++N) {
        err.add({double(N), unit_series_error(w, N)});
    }
    out.document.tables.push_back(std::move(sums));
    out.document.tables.push_back(std::move(err));
    return out;
}

// --- sweep -----------------------------------------------------------------

CommandResult sweep_command(const RunConfig& c) {
    require_known(c, {"system", "kappaL", "kappa-a0", "n", "threads", "omega0"});
    const std::string system = c.text("system", "well");
    require(system == "well" || system == "oscillator", "--system must be well or oscillator");
    const int threads = thread_count(c);
    CommandResult out;
    out.document.header = config_echo(c);
    if (system == "well") {
        require(!c.has("kappa-a0") && !c.has("omega0"), "--kappa-a0/--omega0 apply to the oscillator sweep");
        const auto kLs = c.reals("kappaL", "0:0.05:3");
        const auto ns = c.integers("n", "1..3");
        for (double kL : kLs) {
            require(std::isfinite(kL), "--kappaL values must be finite");
        }
        for (int n : ns) {
            require(n >= 1, "--n: well levels start at 1");
        }
        using Row = std::vector<double>;
        const auto rows = parallel_map<Row>(kLs.size() * ns.size(), threads, [&](std::size_t i) {
            const double kL = kLs[i / ns.size()];
            const int n = ns[i % ns.size()];
            const WellSpec w(1.0, DeformationParameter(kL));
            const auto m = moments(w, n);
            return Row{kL, double(n), energy_ratio(w, n), m.mean_x, m.mean_x2, m.mean_p2, m.dx, m.dp, m.dx * m.dp};
        });
        Table t("well", {"kappaL", "n", "E_over_eps0", "mean_x", "mean_x2", "mean_p2", "dx", "dp", "dx_dp"});
        for (const auto& r : rows) {
            t.add(r);
        }
        out.document.tables.push_back(std::move(t));
    } else {
        require(!c.has("kappaL"), "--kappaL applies to the well sweep");
        const auto kas = c.reals("kappa-a0", "-1:0.05:1");
        const auto ns = c.integers("n", "0..3");
        const double omega0 = c.real("omega0", 1.0);
        require(std::isfinite(omega0) && omega0 > 0.0, "--omega0 must be finite and positive");
        for (double ka : kas) {
            require(std::isfinite(ka), "--kappa-a0 values must be finite");
        }
        for (int n : ns) {
            require(n >= 0, "--n: oscillator levels start at 0");
        }
        using Row = std::vector<double>;
        const auto rows = parallel_map<Row>(kas.size(), threads, [&](std::size_t i) {
            Row flat;
            for (const auto& r : uncertainty_scan({kas[i]}, ns, omega0)) {
                const OscillatorSpec s(omega0, DeformationParameter(kas[i] * std::sqrt(omega0)));
                const bool bound = r.n < s.bound_state_count();
                const double E = bound ? energy(s, r.n) : std::numeric_limits<double>::quiet_NaN();
                flat.insert(flat.end(), {r.kappa_a0, double(r.n), r.nu, E, r.dx, r.dp, r.product,
                                         r.flagged ? 1.0 : 0.0});
            }
            return flat;
        });
        Table t("oscillator", {"kappa_a0", "n", "nu", "E", "dx", "dp", "dx_dp", "flagged"});
        for (const auto& flat : rows) {
            for (std::size_t k = 0; k < flat.size(); k += 8) {
                t.add(Row(flat.begin() + long(k), flat.begin() + long(k + 8)));
            }
        }
        out.document.tables.push_back(std::move(t));
    }
    return out;
}

// --- crosscheck ------------------------------------------------------------

CommandResult crosscheck_command(const RunConfig& c) {
    require_known(c, {"suite"});
    const auto ids = suite_criteria(c.text("suite", "all"));
    CommandResult out;
    out.document.header = config_echo(c);
    Table t("results", {"criterion", "check", "passed", "measured", "threshold"});
    for (int id : ids) {
        const auto r = run_criterion(id);
        for (std::size_t k = 0; k < r.checks.size(); ++k) {
            const auto& ch = r.checks[k];
            t.notes.push_back(std::to_string(id) + "." + std::to_string(k + 1) + " " + r.title + ": " + ch.name);
            t.add({double(id), double(k + 1), ch.passed ? 1.0 : 0.0, ch.measured, ch.threshold});
            out.checks_passed = out.checks_passed && ch.passed;
        }
    }
    out.document.tables.push_back(std::move(t));
    return out;
}

}  // namespace

CommandResult compute(const RunConfig& config) {
    switch (config.command) {
        case Command::algebra_check: return algebra_command(config);
        case Command::well: return well_command(config);
        case Command::oscillator: return oscillator_command(config);
        case Command::classical: return classical_command(config);
        case Command::fourier: return fourier_command(config);
        case Command::sweep: return sweep_command(config);
        case Command::crosscheck: return crosscheck_command(config);
    }
    throw ConfigError("unknown command");
}

}  // namespace kpdm::cli
