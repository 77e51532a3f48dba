#ifndef MOLSPEC_CONFIG_HPP
#define MOLSPEC_CONFIG_HPP

// Run configuration: YAML input, validation, and the JSON run manifest that
// makes every output file self-describing.
//
//   molecule:
//     omega_eg: pi/5
//     modes:
//       - {omega0: pi/90, D: 1}
//   init: {kind: thermal, nbar: 1, tau: 90, thermal_mode: faithful}
//   grid: {dt: 1, t_max: 900}
//   imperfection: {f: 0.83, F: 0.94}
//   truncation: {dim: 60}
//   sweep: {parameter: D, values: [0, 1, 4], j: 0}
//   output: {format: csv}
//
// Every key is optional except init.nbar for thermal runs; a Fock run
// defaults to n = 1. Real values accept plain numbers or multiples of pi
// such as "pi/5", "2*pi/90" or "0.5*pi".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molspec/circuit.hpp"
#include "molspec/model.hpp"
#include "molspec/spectrum.hpp"

namespace molspec {

enum class OutputFormat { Csv, Structured };

struct SweepSpec {
    SweptParameter parameter = SweptParameter::HuangRhys;
    std::vector<double> values;
    /// Vibronic index of the peak read at omega_eg + j omega0.
    int j = 0;
    void validate() const;
    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct RunConfig {
    MoleculeParams molecule;
    PhononInit init;
    TimeGrid grid;
    ThermalMode thermal_mode = ThermalMode::Faithful;
    std::optional<int> truncation_dim;
    std::optional<ImperfectionModel> imperfection;
    std::optional<SweepSpec> sweep;
    OutputFormat format = OutputFormat::Csv;

    void validate() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a config document. A run manifest (or an output file
/// starting with one) is accepted too and yields the config it records.
/// Throws ParseError for malformed text and ValidationError for bad values.
RunConfig parse_config(std::string_view text);

/// parse_config on a file; IoError when it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Real number or multiple of pi ("pi", "pi/5", "3*pi/4", "0.5*pi").
double parse_real(std::string_view text);

std::string to_string(SweptParameter parameter);
std::string to_string(OutputFormat format);
std::string to_string(ThermalMode mode);
std::string init_kind(const PhononInit& init);

/// Version string recorded in every manifest.
std::string version_tag();

/// What a run actually used beyond the config itself.
struct RunInfo {
    std::string command;
    std::string engine;
    std::optional<int> truncation_dim;
};

/// Single-line JSON manifest: the fully resolved config, the truncation
/// dimension and the version tag. Keys are sorted and reals round-trip exactly.
std::string manifest_json(const RunConfig& config, const RunInfo& info);

} // namespace molspec

#endif // MOLSPEC_CONFIG_HPP
