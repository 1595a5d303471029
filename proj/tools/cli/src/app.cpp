#include "kpdm_cli/app.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/version.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <utility>

namespace kpdm::cli {

namespace {

struct OptionDoc {
    const char* name;
    const char* help;
};

struct CommandDoc {
    Command command;
    const char* help;
    std::vector<OptionDoc> options;
};

const std::vector<CommandDoc>& command_docs() {
    static const std::vector<CommandDoc> docs = {
        {Command::algebra_check,
         "randomized identity checks of the kappa algebra",
         {{"samples", "number of random samples (10000)"},
          {"seed", "RNG seed (20240601)"},
          {"kappa-range", "kappa drawn from [-r, r] (2)"},
          {"u-range", "arguments drawn from [-r, r] (5)"},
          {"tol", "relative tolerance (1e-12)"}}},
        {Command::well,
         "infinite well with position-dependent mass",
         {{"kappaL", "deformation list, e.g. 0,0.5,1,3 or 0:0.1:3"},
          {"n", "levels, e.g. 1..6"},
          {"L", "well width (1)"},
          {"quantity", "energies|densities|momentum|uncertainty|all (energies)"},
          {"points", "grid points for densities (201)"},
          {"k-max", "momentum window half-width (40)"}}},
        {Command::oscillator,
         "Mathews-Lakshmanan oscillator",
         {{"nu", "nu list, inf for the undeformed oscillator (4,5,10)"},
          {"kappa-a0", "deformation list in units of 1/a0 (alternative to --nu)"},
          {"n", "levels (0..3)"},
          {"omega0", "frequency (1)"},
          {"quantity", "potential|levels|states|uncertainty|all (states)"},
          {"points", "grid points (241)"},
          {"x-max", "window half-width in units of a0 (6)"},
          {"scan", "kappa a0 values for the uncertainty scan (-1:0.02:1)"}}},
        {Command::classical,
         "classical trajectories in both frames",
         {{"system", "oscillator|well|free (oscillator)"},
          {"kappa-A0", "deformation list; kappa L for the well"},
          {"A0", "undeformed amplitude (1)"},
          {"omega0", "frequency (1)"},
          {"kappa", "deformation for the free particle (1)"},
          {"v0", "initial velocity for the free particle (1)"},
          {"L", "well width (1)"},
          {"energy", "well energy (1)"},
          {"dt", "time step (1e-3)"},
          {"periods", "integration length in periods (2)"},
          {"stride", "sample every stride steps (10)"},
          {"t-max", "free particle duration (5)"}}},
        {Command::fourier,
         "deformed Fourier series of the unit function",
         {{"kappaL", "deformation (1)"},
          {"L", "well width (1)"},
          {"N", "partial-sum orders (1,2,5,50)"},
          {"points", "grid points (201)"},
          {"N-max", "last order in the error table (1000)"}}},
        {Command::sweep,
         "parallel parameter sweep of moments",
         {{"system", "well|oscillator (well)"},
          {"kappaL", "well deformation list (0:0.05:3)"},
          {"kappa-a0", "oscillator deformation list (-1:0.05:1)"},
          {"n", "levels"},
          {"omega0", "oscillator frequency (1)"},
          {"threads", "worker threads, 0 = hardware (0)"}}},
        {Command::crosscheck,
         "analytic versus numeric checks",
         {{"suite", "all|algebra|well|oscillator|classical|uncertainty|fourier|moments|determinism (all)"}}},
    };
    return docs;
}

Format parse_format(const std::string& text) {
    if (text == "csv") {
        return Format::csv;
    }
    if (text == "json") {
        return Format::json;
    }
    throw ConfigError("--format must be csv or json");
}

}  // namespace

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app("Position-dependent mass toolkit", "kpdm");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunConfig config;
    std::string format_text;
    for (const auto& doc : command_docs()) {
        auto* sub = app.add_subcommand(to_string(doc.command), doc.help);
        sub->add_option("--out,-o", config.output, "output file or directory");
        sub->add_option("--format,-f", format_text, "csv or json");
        for (const auto& opt : doc.options) {
            const std::string key = opt.name;
            sub->add_option_function<std::string>(
                "--" + key, [&config, key](const std::string& v) { config.parameters[key] = v; }, opt.help);
        }
        sub->callback([&config, c = doc.command] { config.command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        if (e.get_name() == "CallForVersion") {
            out << e.what() << "\n";
            return std::nullopt;
        }
        const CLI::App* shown = &app;
        for (const auto* sub : app.get_subcommands()) {
            shown = sub;
        }
        out << shown->help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    if (!format_text.empty()) {
        config.format = parse_format(format_text);
    }
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto result = compute(config);
        for (const auto& path : write_document(config, result.document, out)) {
            err << "wrote " << path << "\n";
        }
        if (!result.checks_passed) {
            err << "kpdm: checks failed\n";
            return kExitCheckFailed;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "kpdm: configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DomainError& e) {
        err << "kpdm: configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const NumericError& e) {
        err << "kpdm: numerical failure: " << e.what() << " (achieved " << format_real(e.achieved()) << ")\n";
        return kExitNumericError;
    } catch (const Error& e) {
        err << "kpdm: numerical failure: " << e.what() << "\n";
        return kExitNumericError;
    }
}

int main_entry(int argc, const char* const* argv) {
    try {
        const auto config = parse_command_line(argc, argv, std::cout);
        if (!config) {
            return kExitOk;
        }
        return run(*config, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "kpdm: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace kpdm::cli
