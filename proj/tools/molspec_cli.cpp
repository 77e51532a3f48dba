#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "molspec/commands.hpp"
#include "molspec/config.hpp"
#include "molspec/errors.hpp"
#include "molspec/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitTruncation = 2;
constexpr int kExitVerification = 3;

struct Options {
    std::string config_path;
    std::string out_path;
    std::optional<std::string> format;
    std::optional<int> dim;
    int jobs = 1;
};

void add_run_options(CLI::App* command, Options& options) {
    command->add_option("--config", options.config_path, "YAML config, run manifest, or earlier output file")
        ->check(CLI::ExistingFile);
    command->add_option("--out", options.out_path, "output file (default: stdout)");
    command->add_option("--format", options.format, "output format")->check(CLI::IsMember({"csv", "structured"}));
    command->add_option("--dim", options.dim, "Fock cutoff override")->check(CLI::PositiveNumber);
    command->add_option("--jobs", options.jobs, "worker threads")->check(CLI::PositiveNumber);
}

molspec::RunConfig resolve(const Options& options) {
    molspec::RunConfig config =
        options.config_path.empty() ? molspec::parse_config("") : molspec::load_config(options.config_path);
    if (options.format) {
        config.format = *options.format == "structured" ? molspec::OutputFormat::Structured : molspec::OutputFormat::Csv;
    }
    if (options.dim) {
        config.truncation_dim = *options.dim;
    }
    config.validate();
    return config;
}

void emit(const Options& options, const std::string& content) {
    if (options.out_path.empty()) {
        std::cout << content;
        std::cout.flush();
    } else {
        molspec::write_output(options.out_path, content);
    }
}

int verify(int jobs) {
    molspec::VerifyHooks hooks;
    hooks.jobs = jobs;
    int failures = 0;
    for (const auto& result : molspec::run_acceptance(hooks)) {
        std::cout << molspec::format_result(result) << '\n';
        failures += result.passed ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vibronic spectroscopy on a simulated ancilla-qubit + cavity processor"};
    app.set_version_flag("--version", molspec::version_tag());
    app.require_subcommand(1);

    Options options;
    CLI::App* trace = app.add_subcommand("trace", "correlation trace C(t): t, re_C, im_C");
    CLI::App* spectrum = app.add_subcommand("spectrum", "absorption spectrum: omega, sigma");
    CLI::App* sweep = app.add_subcommand("sweep", "omega_eg + j omega0 peak over a swept parameter: param, peak");
    CLI::App* check = app.add_subcommand("verify", "run the acceptance suite");
    for (CLI::App* command : {trace, spectrum, sweep}) {
        add_run_options(command, options);
    }
    check->add_option("--jobs", options.jobs, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        return app.exit(error) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (check->parsed()) {
            return verify(options.jobs);
        }
        const molspec::RunConfig config = resolve(options);
        if (trace->parsed()) {
            emit(options, molspec::cmd_trace(config, options.jobs));
        } else if (spectrum->parsed()) {
            emit(options, molspec::cmd_spectrum(config, options.jobs));
        } else {
            emit(options, molspec::cmd_sweep(config, options.jobs));
        }
        return kExitOk;
    } catch (const molspec::TruncationError& error) {
        std::cerr << "truncation error: " << error.what() << '\n';
        return kExitTruncation;
    } catch (const molspec::ParseError& error) {
        std::cerr << "config parse error: " << error.what() << '\n';
        return kExitValidation;
    } catch (const molspec::ValidationError& error) {
        std::cerr << "invalid value for " << error.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitValidation;
    }
}
