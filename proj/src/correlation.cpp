#include "molspec/correlation.hpp"

#include <cmath>
#include <vector>

#include "molspec/errors.hpp"
#include "molspec/molecule.hpp"

namespace molspec {
namespace {

using namespace std::complex_literals;

// Phonon part of C(t), i.e. with e^{-i omega_eg t} stripped.
std::complex<double> phonon_factor(const ModeParams& mode, const PhononState& state, double t) {
    const double theta = mode.omega0 * t;
    const double d = mode.huang_rhys;
    if (std::holds_alternative<Vacuum>(state)) {
        return std::exp(d * (std::polar(1.0, -theta) - 1.0));
    }
    if (const auto* fock = std::get_if<Fock>(&state)) {
        const double x = std::norm(displacement_amplitude(mode, t));
        return std::polar(std::exp(-x / 2.0) * laguerre(fock->n, x), -d * std::sin(theta));
    }
    const double nbar = std::get<Thermal>(state).nbar;
    return std::exp(d * ((nbar + 1.0) * (std::polar(1.0, -theta) - 1.0) +
                         nbar * (std::polar(1.0, theta) - 1.0)));
}

std::complex<double> damped(std::complex<double> value, const PhononInit& init, double t) {
    return init.damping_tau ? apply_damping(value, t, *init.damping_tau) : value;
}

} // namespace

double laguerre(int n, int k, double x) {
    if (n < 0) {
        throw ValidationError("n", "Laguerre degree must be >= 0");
    }
    double previous = 1.0;
    if (n == 0) {
        return previous;
    }
    double current = 1.0 + k - x;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 + k - x) * current - (j + k) * previous) / (j + 1.0);
        previous = current;
        current = next;
    }
    return current;
}

std::complex<double> corr_vacuum(const MoleculeParams& params, const ModeParams& mode, double t) {
    return std::polar(1.0, -params.omega_eg * t) * phonon_factor(mode, Vacuum{}, t);
}

std::complex<double> corr_fock(const MoleculeParams& params, const ModeParams& mode, int n, double t) {
    if (n < 0) {
        throw ValidationError("n", "Fock level must be >= 0");
    }
    if (n == 0) {
        return corr_vacuum(params, mode, t);
    }
    return std::polar(1.0, -params.omega_eg * t) * phonon_factor(mode, Fock{n}, t);
}

std::complex<double> corr_thermal(const MoleculeParams& params, const ModeParams& mode, double nbar,
                                  double t) {
    if (!(nbar >= 0.0)) {
        throw ValidationError("nbar", "thermal occupation must be >= 0");
    }
    return std::polar(1.0, -params.omega_eg * t) * phonon_factor(mode, Thermal{nbar}, t);
}

std::complex<double> apply_damping(std::complex<double> value, double t, double tau) {
    if (!(tau > 0.0)) {
        throw ValidationError("tau", "damping time must be > 0");
    }
    return std::exp(-std::abs(t) / tau) * value;
}

std::complex<double> corr_oracle(const MoleculeParams& params, const ModeParams& mode,
                                 const PhononInit& init, double t) {
    const std::complex<double> value =
        std::polar(1.0, -params.omega_eg * t) * phonon_factor(mode, init.state, t);
    return damped(value, init, t);
}

std::complex<double> corr_multimode(double omega_eg, std::span<const std::pair<ModeParams, PhononInit>> inits,
                                    double t) {
    if (inits.empty()) {
        throw ValidationError("modes", "at least one mode is required");
    }
    std::complex<double> value = std::polar(1.0, -omega_eg * t);
    for (const auto& [mode, init] : inits) {
        value *= damped(phonon_factor(mode, init.state, t), init, t);
    }
    return value;
}

CorrelationTrace oracle_trace(const MoleculeParams& params, const PhononInit& init, const TimeGrid& grid,
                              const std::optional<ImperfectionModel>& imperfection) {
    params.validate();
    init.validate();
    const int samples = grid.samples();
    if (imperfection) {
        imperfection->validate();
    }

    // Imperfect Fock preparation: F |n><n| + (1 - F) |0><0|, linear in C.
    std::vector<std::pair<double, PhononInit>> mixture{{1.0, init}};
    if (imperfection && std::holds_alternative<Fock>(init.state) && imperfection->prep_fidelity_F < 1.0) {
        const double fidelity = imperfection->prep_fidelity_F;
        PhononInit vacuum = init;
        vacuum.state = Vacuum{};
        mixture = {{fidelity, init}, {1.0 - fidelity, vacuum}};
    }
    const double contrast = imperfection ? imperfection->contrast_f : 1.0;

    std::vector<std::pair<ModeParams, PhononInit>> per_mode;
    CorrelationTrace trace{grid.dt, std::vector<std::complex<double>>(static_cast<std::size_t>(samples))};
    for (int k = 0; k < samples; ++k) {
        const double t = grid.time(k);
        std::complex<double> value = 0.0;
        for (const auto& [weight, component] : mixture) {
            if (params.modes.size() == 1) {
                value += weight * corr_oracle(params, params.modes.front(), component, t);
                continue;
            }
            // the shared damping envelope multiplies the whole product once
            per_mode.clear();
            for (const auto& mode : params.modes) {
                per_mode.emplace_back(mode, component.undamped());
            }
            value += weight * damped(corr_multimode(params.omega_eg, per_mode, t), component, t);
        }
        trace.values[static_cast<std::size_t>(k)] = contrast * value;
    }
    return trace;
}

} // namespace molspec
