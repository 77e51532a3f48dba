#ifndef MOLSPEC_COMMANDS_HPP
#define MOLSPEC_COMMANDS_HPP

// The batch commands behind the CLI. Each returns the complete file content:
// a manifest header followed by CSV rows, or one JSON document in structured
// format. Content depends only on the config, never on the worker count.

#include <filesystem>
#include <string>
#include <string_view>

#include "molspec/config.hpp"
#include "molspec/model.hpp"

namespace molspec {

struct TraceRun {
    CorrelationTrace trace;
    RunInfo info;
};

/// Single-mode configs run the circuit simulation; multimode configs use
/// the closed-form product of mode factors.
TraceRun compute_trace(const RunConfig& config, int jobs = 1);

/// Columns t, re_C, im_C.
std::string cmd_trace(const RunConfig& config, int jobs = 1);
/// Columns omega, sigma over all DFT bins.
std::string cmd_spectrum(const RunConfig& config, int jobs = 1);
/// Columns param, peak; needs a sweep block in the config.
std::string cmd_sweep(const RunConfig& config, int jobs = 1);

/// printf %.17g: 17 significant digits, enough to round-trip any double.
std::string format_real(double value);

/// Writes content to path, replacing any existing file. IoError on failure.
void write_output(const std::filesystem::path& path, std::string_view content);

} // namespace molspec

#endif // MOLSPEC_COMMANDS_HPP
