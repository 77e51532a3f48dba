#include "molspec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

#include "molspec/errors.hpp"

namespace molspec {
namespace {

constexpr std::string_view kManifestPrefix = "# manifest: ";
constexpr double kMaxHuangRhys = 8.0;
constexpr double kMaxOccupation = 8.0;
constexpr double kMaxInverseTauOmega0 = 4.0;

std::string located(const YAML::Node& node, const std::string& what) {
    const YAML::Mark mark = node.Mark();
    if (mark.is_null()) {
        return what;
    }
    return what + " (line " + std::to_string(mark.line + 1) + ")";
}

void check_keys(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) {
        throw ValidationError(path, located(node, "expected a mapping"));
    }
    for (const auto& entry : node) {
        const std::string key = entry.first.as<std::string>();
        bool known = false;
        for (std::string_view candidate : allowed) {
            known = known || key == candidate;
        }
        if (!known) {
            throw ValidationError(path.empty() ? key : path + "." + key, located(entry.first, "unknown key"));
        }
    }
}

std::string scalar_of(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) {
        throw ValidationError(path, located(node, "expected a scalar value"));
    }
    return node.Scalar();
}

double real_at(const YAML::Node& node, const std::string& path) {
    const std::string text = scalar_of(node, path);
    try {
        return parse_real(text);
    } catch (const std::invalid_argument&) {
        throw ValidationError(path, located(node, "expected a real number or multiple of pi, got '" + text + "'"));
    }
}

int int_at(const YAML::Node& node, const std::string& path) {
    const std::string text = scalar_of(node, path);
    int value = 0;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc() || ptr != last) {
        throw ValidationError(path, located(node, "expected an integer, got '" + text + "'"));
    }
    return value;
}

std::string word_at(const YAML::Node& node, const std::string& path,
                    std::initializer_list<std::string_view> choices) {
    const std::string text = scalar_of(node, path);
    for (std::string_view choice : choices) {
        if (text == choice) {
            return text;
        }
    }
    std::string listed;
    for (std::string_view choice : choices) {
        listed += (listed.empty() ? "" : ", ") + std::string(choice);
    }
    throw ValidationError(path, located(node, "expected one of {" + listed + "}, got '" + text + "'"));
}

double factor_value(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text == "pi") {
        return std::numbers::pi;
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

double product_value(std::string_view text) {
    double value = 1.0;
    std::size_t start = 0;
    for (;;) {
        const std::size_t star = text.find('*', start);
        value *= factor_value(text.substr(start, star == std::string_view::npos ? star : star - start));
        if (star == std::string_view::npos) {
            return value;
        }
        start = star + 1;
    }
}

ModeParams parse_mode(const YAML::Node& node, const std::string& path) {
    check_keys(node, path, {"omega0", "D"});
    ModeParams mode;
    if (node["omega0"]) {
        mode.omega0 = real_at(node["omega0"], path + ".omega0");
    }
    if (node["D"]) {
        mode.huang_rhys = real_at(node["D"], path + ".D");
    }
    return mode;
}

SweptParameter swept_from(const std::string& word) {
    if (word == "D") {
        return SweptParameter::HuangRhys;
    }
    if (word == "nbar") {
        return SweptParameter::ThermalOccupation;
    }
    return SweptParameter::InverseTauOmega0;
}

RunConfig parse_root(const YAML::Node& root) {
    RunConfig config;
    if (!root || root.IsNull()) {
        return config;
    }
    check_keys(root, "", {"molecule", "init", "grid", "imperfection", "truncation", "sweep", "output"});

    if (const YAML::Node molecule = root["molecule"]) {
        check_keys(molecule, "molecule", {"omega_eg", "modes"});
        if (molecule["omega_eg"]) {
            config.molecule.omega_eg = real_at(molecule["omega_eg"], "molecule.omega_eg");
        }
        if (const YAML::Node modes = molecule["modes"]) {
            if (!modes.IsSequence()) {
                throw ValidationError("molecule.modes", located(modes, "expected a list of modes"));
            }
            config.molecule.modes.clear();
            for (std::size_t i = 0; i < modes.size(); ++i) {
                config.molecule.modes.push_back(parse_mode(modes[i], "molecule.modes[" + std::to_string(i) + "]"));
            }
        }
    }

    if (const YAML::Node init = root["init"]) {
        check_keys(init, "init", {"kind", "n", "nbar", "tau", "thermal_mode"});
        const std::string kind =
            init["kind"] ? word_at(init["kind"], "init.kind", {"vacuum", "fock", "thermal"}) : "vacuum";
        if (init["n"] && kind != "fock") {
            throw ValidationError("init.n", located(init["n"], "only applies to init.kind fock"));
        }
        if (init["nbar"] && kind != "thermal") {
            throw ValidationError("init.nbar", located(init["nbar"], "only applies to init.kind thermal"));
        }
        if (kind == "fock") {
            config.init.state = Fock{init["n"] ? int_at(init["n"], "init.n") : 1};
        } else if (kind == "thermal") {
            if (!init["nbar"]) {
                throw ValidationError("init.nbar", located(init, "required for init.kind thermal"));
            }
            config.init.state = Thermal{real_at(init["nbar"], "init.nbar")};
        }
        if (init["tau"]) {
            config.init.damping_tau = real_at(init["tau"], "init.tau");
        }
        if (init["thermal_mode"]) {
            config.thermal_mode = word_at(init["thermal_mode"], "init.thermal_mode", {"faithful", "direct"}) == "direct"
                                      ? ThermalMode::Direct
                                      : ThermalMode::Faithful;
        }
    }

    if (const YAML::Node grid = root["grid"]) {
        check_keys(grid, "grid", {"dt", "t_max"});
        if (grid["dt"]) {
            config.grid.dt = real_at(grid["dt"], "grid.dt");
        }
        if (grid["t_max"]) {
            config.grid.t_max = real_at(grid["t_max"], "grid.t_max");
        }
    }

    if (const YAML::Node imperfection = root["imperfection"]) {
        check_keys(imperfection, "imperfection", {"f", "F"});
        ImperfectionModel model;
        if (imperfection["f"]) {
            model.contrast_f = real_at(imperfection["f"], "imperfection.f");
        }
        if (imperfection["F"]) {
            model.prep_fidelity_F = real_at(imperfection["F"], "imperfection.F");
        }
        config.imperfection = model;
    }

    if (const YAML::Node truncation = root["truncation"]) {
        check_keys(truncation, "truncation", {"dim"});
        if (truncation["dim"]) {
            config.truncation_dim = int_at(truncation["dim"], "truncation.dim");
        }
    }

    if (const YAML::Node sweep = root["sweep"]) {
        check_keys(sweep, "sweep", {"parameter", "values", "j"});
        SweepSpec sweep_spec;
        if (sweep["parameter"]) {
            sweep_spec.parameter = swept_from(word_at(sweep["parameter"], "sweep.parameter", {"D", "nbar", "inv_tau_omega0"}));
        }
        if (const YAML::Node values = sweep["values"]) {
            if (!values.IsSequence()) {
                throw ValidationError("sweep.values", located(values, "expected a list"));
            }
            for (std::size_t i = 0; i < values.size(); ++i) {
                sweep_spec.values.push_back(real_at(values[i], "sweep.values[" + std::to_string(i) + "]"));
            }
        }
        if (sweep["j"]) {
            sweep_spec.j = int_at(sweep["j"], "sweep.j");
        }
        config.sweep = sweep_spec;
    }

    if (const YAML::Node output = root["output"]) {
        check_keys(output, "output", {"format"});
        if (output["format"]) {
            config.format = word_at(output["format"], "output.format", {"csv", "structured"}) == "structured"
                                ? OutputFormat::Structured
                                : OutputFormat::Csv;
        }
    }
    return config;
}

// A manifest stores the config under "config"; structured outputs nest the
// manifest under "manifest".
YAML::Node config_node(const YAML::Node& root) {
    if (root.IsMap() && root["manifest"] && root["manifest"].IsMap()) {
        return config_node(root["manifest"]);
    }
    if (root.IsMap() && root["config"] && root["version"]) {
        return root["config"];
    }
    return root;
}

nlohmann::json config_json(const RunConfig& config) {
    nlohmann::json modes = nlohmann::json::array();
    for (const ModeParams& mode : config.molecule.modes) {
        modes.push_back({{"omega0", mode.omega0}, {"D", mode.huang_rhys}});
    }
    nlohmann::json init = {{"kind", init_kind(config.init)}, {"thermal_mode", to_string(config.thermal_mode)}};
    if (const auto* fock = std::get_if<Fock>(&config.init.state)) {
        init["n"] = fock->n;
    }
    if (const auto* thermal = std::get_if<Thermal>(&config.init.state)) {
        init["nbar"] = thermal->nbar;
    }
    if (config.init.damping_tau) {
        init["tau"] = *config.init.damping_tau;
    }
    nlohmann::json out = {
        {"molecule", {{"omega_eg", config.molecule.omega_eg}, {"modes", modes}}},
        {"init", init},
        {"grid", {{"dt", config.grid.dt}, {"t_max", config.grid.t_max}}},
        {"output", {{"format", to_string(config.format)}}},
    };
    if (config.imperfection) {
        out["imperfection"] = {{"f", config.imperfection->contrast_f}, {"F", config.imperfection->prep_fidelity_F}};
    }
    if (config.truncation_dim) {
        out["truncation"] = {{"dim", *config.truncation_dim}};
    }
    if (config.sweep) {
        out["sweep"] = {
            {"parameter", to_string(config.sweep->parameter)}, {"values", config.sweep->values}, {"j", config.sweep->j}};
    }
    return out;
}

} // namespace

double parse_real(std::string_view text) {
    const std::size_t slash = text.find('/');
    double value = product_value(text.substr(0, slash));
    if (slash != std::string_view::npos) {
        const double denominator = product_value(text.substr(slash + 1));
        if (denominator == 0.0) {
            throw std::invalid_argument("division by zero");
        }
        value /= denominator;
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument("not finite");
    }
    return value;
}

void SweepSpec::validate() const {
    if (values.empty()) {
        throw ValidationError("sweep.values", "at least one value is required");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string field = "sweep.values[" + std::to_string(i) + "]";
        const double v = values[i];
        if (i > 0 && !(v > values[i - 1])) {
            throw ValidationError(field, "values must be strictly ascending");
        }
        switch (parameter) {
        case SweptParameter::HuangRhys:
            if (!(v >= 0.0 && v <= kMaxHuangRhys)) {
                throw ValidationError(field, "D must lie in [0, 8]");
            }
            break;
        case SweptParameter::ThermalOccupation:
            if (!(v >= 0.0 && v <= kMaxOccupation)) {
                throw ValidationError(field, "nbar must lie in [0, 8]");
            }
            break;
        case SweptParameter::InverseTauOmega0:
            if (!(v > 0.0 && v <= kMaxInverseTauOmega0)) {
                throw ValidationError(field, "1/(tau omega0) must lie in (0, 4]");
            }
            break;
        }
    }
    if (j < 0) {
        throw ValidationError("sweep.j", "must be >= 0");
    }
}

void RunConfig::validate() const {
    for (std::size_t i = 0; i < molecule.modes.size(); ++i) {
        const std::string path = "molecule.modes[" + std::to_string(i) + "]";
        try {
            molecule.modes[i].validate();
        } catch (const ValidationError& error) {
            throw ValidationError(path + "." + error.field(), std::string(error.what()).substr(error.field().size() + 2));
        }
        if (molecule.modes[i].huang_rhys > kMaxHuangRhys) {
            throw ValidationError(path + ".huang_rhys_D", "must be <= 8");
        }
    }
    molecule.validate();
    init.validate();
    if (const auto* thermal = std::get_if<Thermal>(&init.state); thermal && thermal->nbar > kMaxOccupation) {
        throw ValidationError("init.nbar", "must be <= 8");
    }
    grid.samples();
    if (imperfection) {
        imperfection->validate();
    }
    if (truncation_dim && *truncation_dim < 1) {
        throw ValidationError("truncation.dim", "must be >= 1");
    }
    if (sweep) {
        sweep->validate();
    }
}

RunConfig parse_config(std::string_view text) {
    std::string document(text);
    if (text.substr(0, kManifestPrefix.size()) == kManifestPrefix) {
        const std::size_t end = text.find('\n');
        document = std::string(text.substr(kManifestPrefix.size(), end == std::string_view::npos
                                                                        ? std::string_view::npos
                                                                        : end - kManifestPrefix.size()));
    }
    YAML::Node root;
    try {
        root = YAML::Load(document);
    } catch (const YAML::ParserException& error) {
        throw ParseError(error.msg, error.mark.line + 1, error.mark.column + 1);
    }
    RunConfig config = parse_root(config_node(root));
    config.validate();
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open config file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_string(SweptParameter parameter) {
    switch (parameter) {
    case SweptParameter::HuangRhys:
        return "D";
    case SweptParameter::ThermalOccupation:
        return "nbar";
    case SweptParameter::InverseTauOmega0:
        return "inv_tau_omega0";
    }
    return "D";
}

std::string to_string(OutputFormat format) { return format == OutputFormat::Structured ? "structured" : "csv"; }

std::string to_string(ThermalMode mode) { return mode == ThermalMode::Direct ? "direct" : "faithful"; }

std::string init_kind(const PhononInit& init) {
    if (std::holds_alternative<Fock>(init.state)) {
        return "fock";
    }
    if (std::holds_alternative<Thermal>(init.state)) {
        return "thermal";
    }
    return "vacuum";
}

std::string version_tag() { return std::string("molspec ") + MOLSPEC_VERSION; }

std::string manifest_json(const RunConfig& config, const RunInfo& info) {
    nlohmann::json manifest = {
        {"version", version_tag()},
        {"command", info.command},
        {"engine", info.engine},
        {"config", config_json(config)},
    };
    manifest["truncation_dim"] = info.truncation_dim ? nlohmann::json(*info.truncation_dim) : nlohmann::json(nullptr);
    return manifest.dump();
}

} // namespace molspec
