#include "molspec/commands.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <vector>

#include "molspec/circuit.hpp"
#include "molspec/correlation.hpp"
#include "molspec/errors.hpp"
#include "molspec/spectrum.hpp"

namespace molspec {
namespace {

using Row = std::vector<double>;

std::string render(const RunConfig& config, const RunInfo& info, std::initializer_list<std::string_view> columns,
                   const std::vector<Row>& rows) {
    const std::string manifest = manifest_json(config, info);
    std::string out;
    if (config.format == OutputFormat::Csv) {
        out += "# manifest: " + manifest + "\n";
        bool first = true;
        for (std::string_view column : columns) {
            out += (first ? "" : ",") + std::string(column);
            first = false;
        }
        out += "\n";
        for (const Row& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out += (i == 0 ? "" : ",") + format_real(row[i]);
            }
            out += "\n";
        }
        return out;
    }

    out += "{\"manifest\":" + manifest + ",\n\"columns\":[";
    bool first = true;
    for (std::string_view column : columns) {
        out += (first ? "\"" : ",\"") + std::string(column) + "\"";
        first = false;
    }
    out += "],\n\"rows\":[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += r == 0 ? "\n[" : ",\n[";
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            out += (i == 0 ? "" : ",") + format_real(rows[r][i]);
        }
        out += "]";
    }
    out += "\n]}\n";
    return out;
}

std::string shifts_of(const MoleculeParams& molecule) {
    std::string list;
    for (const ModeParams& mode : molecule.modes) {
        list += (list.empty() ? "" : ", ") + format_real(mode.huang_rhys);
    }
    return list;
}

} // namespace

std::string format_real(double value) {
    char buffer[32];
    const int length = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(length));
}

TraceRun compute_trace(const RunConfig& config, int jobs) {
    config.validate();
    if (config.molecule.modes.size() > 1) {
        if (config.truncation_dim) {
            throw ValidationError("truncation.dim", "multimode runs use the closed-form path and take no Fock cutoff");
        }
        return {oracle_trace(config.molecule, config.init, config.grid, config.imperfection),
                {"trace", "oracle", std::nullopt}};
    }

    const ModeParams& mode = config.molecule.modes.front();
    const RunOptions options{config.thermal_mode, config.truncation_dim, jobs};
    try {
        const TruncatedSpace space = protocol_space(mode, config.init, config.thermal_mode, config.truncation_dim);
        return {run_trace(config.molecule, mode, config.init, config.grid, config.imperfection, options),
                {"trace", "circuit", space.dim()}};
    } catch (const TruncationError& error) {
        throw TruncationError("D = " + shifts_of(config.molecule) + ", dim = " + std::to_string(error.dim()) + ": " +
                                  error.what(),
                              error.amplitude(), error.dim());
    }
}

std::string cmd_trace(const RunConfig& config, int jobs) {
    const TraceRun run = compute_trace(config, jobs);
    std::vector<Row> rows;
    rows.reserve(run.trace.size());
    for (std::size_t k = 0; k < run.trace.size(); ++k) {
        rows.push_back({config.grid.time(static_cast<int>(k)), run.trace.values[k].real(), run.trace.values[k].imag()});
    }
    return render(config, run.info, {"t", "re_C", "im_C"}, rows);
}

std::string cmd_spectrum(const RunConfig& config, int jobs) {
    TraceRun run = compute_trace(config, jobs);
    run.info.command = "spectrum";
    const Spectrum spectrum = dft_spectrum(run.trace);
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(spectrum.size()));
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
        rows.push_back({spectrum.omega(k), spectrum.values(k)});
    }
    return render(config, run.info, {"omega", "sigma"}, rows);
}

std::string cmd_sweep(const RunConfig& config, int jobs) {
    config.validate();
    if (!config.sweep) {
        throw ValidationError("sweep", "the sweep command needs a sweep block (parameter, values)");
    }
    if (config.truncation_dim) {
        throw ValidationError("truncation.dim", "sweeps use the closed-form path and take no Fock cutoff");
    }
    const ProgressionCase base{config.molecule, config.init, config.grid, config.imperfection};
    const auto points = peak_progression(base, config.sweep->parameter, config.sweep->values, config.sweep->j, jobs);
    std::vector<Row> rows;
    rows.reserve(points.size());
    for (const ProgressionPoint& point : points) {
        rows.push_back({point.parameter, point.peak});
    }
    return render(config, {"sweep", "oracle", std::nullopt}, {"param", "peak"}, rows);
}

void write_output(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string(), "cannot open output file for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

} // namespace molspec
