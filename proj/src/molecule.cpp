#include "molspec/molecule.hpp"

#include <cmath>
#include <string>

#include "molspec/errors.hpp"

namespace molspec {

void ModeParams::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw ValidationError("omega0", "must be a positive finite frequency");
    }
    if (!(huang_rhys >= 0.0) || !std::isfinite(huang_rhys)) {
        throw ValidationError("huang_rhys_D", "must be >= 0");
    }
}

void MoleculeParams::validate() const {
    if (!(omega_eg > 0.0) || !std::isfinite(omega_eg)) {
        throw ValidationError("omega_eg", "must be a positive finite frequency");
    }
    if (modes.empty()) {
        throw ValidationError("modes", "at least one vibronic mode is required");
    }
    for (const auto& mode : modes) {
        mode.validate();
    }
}

void PhononInit::validate() const {
    if (const auto* fock = std::get_if<Fock>(&state); fock && fock->n < 0) {
        throw ValidationError("init.n", "Fock level must be >= 0");
    }
    if (const auto* thermal = std::get_if<Thermal>(&state);
        thermal && !(thermal->nbar >= 0.0 && std::isfinite(thermal->nbar))) {
        throw ValidationError("init.nbar", "thermal occupation must be >= 0");
    }
    if (damping_tau && !(*damping_tau > 0.0)) {
        throw ValidationError("init.tau", "damping time must be > 0");
    }
}

int TimeGrid::samples() const {
    validate();
    const double ratio = t_max / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ValidationError("grid.t_max", "must be an integer multiple of grid.dt");
    }
    return static_cast<int>(rounded);
}

void TimeGrid::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("grid.dt", "must be > 0");
    }
    if (!(t_max >= dt) || !std::isfinite(t_max)) {
        throw ValidationError("grid.t_max", "must be >= grid.dt");
    }
}

void ImperfectionModel::validate() const {
    if (!(contrast_f > 0.0 && contrast_f <= 1.0)) {
        throw ValidationError("imperfection.f", "contrast must lie in (0, 1]");
    }
    if (!(prep_fidelity_F > 0.0 && prep_fidelity_F <= 1.0)) {
        throw ValidationError("imperfection.F", "preparation fidelity must lie in (0, 1]");
    }
}

CavityOperator hamiltonian_ground(const ModeParams& mode, const TruncatedSpace& space) {
    return mode.omega0 * number(space);
}

CavityOperator hamiltonian_excited(const MoleculeParams& params, const ModeParams& mode,
                                   const TruncatedSpace& space) {
    const CavityOperator a = annihilation(space);
    const CavityOperator identity = CavityOperator::Identity(space.dim(), space.dim());
    const double d = mode.shift();
    return params.omega_eg * identity +
           mode.omega0 * (a.adjoint() * a - d * (a + a.adjoint()) + mode.huang_rhys * identity);
}

double phase_phi(const MoleculeParams& params, const ModeParams& mode, double t) {
    return params.omega_eg * t + mode.huang_rhys * std::sin(mode.omega0 * t);
}

std::complex<double> displacement_amplitude(const ModeParams& mode, double t) {
    // e^{i w t} - 1 = 2i sin(w t / 2) e^{i w t / 2}; exact zero at revivals
    const double half = 0.5 * mode.omega0 * t;
    return mode.shift() * 2.0 * std::sin(half) * std::complex<double>(-std::sin(half), std::cos(half));
}

CavityOperator evolution_closed(const MoleculeParams& params, const ModeParams& mode, double t,
                                const TruncatedSpace& space) {
    const std::complex<double> phase = std::polar(1.0, -phase_phi(params, mode, t));
    return phase * displacement_operator(displacement_amplitude(mode, t), space);
}

CavityOperator hermitian_propagator(const CavityOperator& hamiltonian, double t) {
    Eigen::SelfAdjointEigenSolver<CavityOperator> eig(hamiltonian);
    const Eigen::VectorXcd phases =
        (-t * eig.eigenvalues()).unaryExpr([](double theta) { return std::polar(1.0, theta); });
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

CavityOperator evolution_brute(const MoleculeParams& params, const ModeParams& mode, double t,
                               const TruncatedSpace& space) {
    const double reach = 2.0 * mode.shift();
    if (!space.holds_displacement(reach)) {
        throw TruncationError("excited-state evolution with D = " + std::to_string(mode.huang_rhys) +
                                  " leaks out of the Fock cutoff " + std::to_string(space.dim()),
                              reach, space.dim());
    }
    Eigen::VectorXcd ground_phase(space.dim());
    for (int n = 0; n < space.dim(); ++n) {
        ground_phase(n) = std::polar(1.0, mode.omega0 * n * t);
    }
    return ground_phase.asDiagonal() * hermitian_propagator(hamiltonian_excited(params, mode, space), t);
}

} // namespace molspec
