#include "molspec/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "molspec/errors.hpp"
#include "molspec/molecule.hpp"
#include "molspec/parallel.hpp"

namespace molspec {
namespace {

using namespace std::complex_literals;

// Thermal direct runs put the ensemble in the cavity, so the qubit angle
// carries only the damping envelope.
PhononInit schedule_init(const PhononInit& init, ThermalMode thermal_mode) {
    if (thermal_mode == ThermalMode::Direct && std::holds_alternative<Thermal>(init.state)) {
        return {Vacuum{}, init.damping_tau};
    }
    return init;
}

double z_expectation(const JointState& joint) {
    return joint.branch(kExcited).squaredNorm() - joint.branch(kGround).squaredNorm();
}

double z_expectation(const JointDensity& joint) {
    const int dim = joint.dim;
    return (joint.matrix.block(dim, dim, dim, dim).trace() - joint.matrix.block(0, 0, dim, dim).trace()).real();
}

} // namespace

QubitOperator pauli_x() {
    QubitOperator m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

QubitOperator pauli_y() {
    QubitOperator m;
    m << 0.0, 1i, -1i, 0.0;
    return m;
}

QubitOperator pauli_z() {
    QubitOperator m;
    m << -1.0, 0.0, 0.0, 1.0;
    return m;
}

QubitOperator rotation_gate(double theta, double phi_axis) {
    const QubitOperator axis = std::cos(phi_axis) * pauli_x() + std::sin(phi_axis) * pauli_y();
    return std::cos(theta / 2.0) * QubitOperator::Identity() - 1i * std::sin(theta / 2.0) * axis;
}

QubitOperator readout_rotation_x() {
    QubitOperator m;
    m << 1.0, -1i, -1i, 1.0;
    return m / std::numbers::sqrt2;
}

QubitOperator readout_rotation_y() {
    QubitOperator m;
    m << 1.0, -1.0, 1.0, 1.0;
    return m / std::numbers::sqrt2;
}

QubitState QubitPrep::state() const {
    return QubitState(std::polar(std::sin(gamma / 2.0), -phi), std::cos(gamma / 2.0));
}

QubitState QubitPrep::pulse_state() const {
    return rotation_gate(std::numbers::pi - gamma, -phi - std::numbers::pi / 2.0) * QubitState(1.0, 0.0);
}

double gamma_schedule(const PhononInit& init, const ModeParams& mode, double t) {
    double exponent = 0.0;
    if (const auto* thermal = std::get_if<Thermal>(&init.state)) {
        exponent += 2.0 * mode.huang_rhys * thermal->nbar * (std::cos(mode.omega0 * t) - 1.0);
    }
    if (init.damping_tau) {
        exponent -= std::abs(t) / *init.damping_tau;
    }
    return exponent == 0.0 ? std::numbers::pi / 2.0 : std::asin(std::exp(exponent));
}

JointState JointState::product(const QubitState& qubit, const CavityState& cavity) {
    JointState joint{static_cast<int>(cavity.size()), Eigen::VectorXcd(2 * cavity.size())};
    joint.branch(kGround) = qubit(kGround) * cavity;
    joint.branch(kExcited) = qubit(kExcited) * cavity;
    return joint;
}

JointDensity JointDensity::product(const QubitState& qubit, const CavityDensity& cavity) {
    const int dim = static_cast<int>(cavity.rows());
    JointDensity joint{dim, Eigen::MatrixXcd(2 * dim, 2 * dim)};
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            joint.matrix.block(p * dim, q * dim, dim, dim) = qubit(p) * std::conj(qubit(q)) * cavity;
        }
    }
    return joint;
}

JointDensity JointDensity::from_pure(const JointState& state) {
    return {state.dim, state.amplitudes * state.amplitudes.adjoint()};
}

JointState apply_qubit(const QubitOperator& gate, const JointState& joint) {
    JointState out{joint.dim, Eigen::VectorXcd(joint.amplitudes.size())};
    for (int p = 0; p < 2; ++p) {
        out.branch(p) = gate(p, kGround) * joint.branch(kGround) + gate(p, kExcited) * joint.branch(kExcited);
    }
    return out;
}

JointDensity apply_qubit(const QubitOperator& gate, const JointDensity& joint) {
    const int dim = joint.dim;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            full.block(p * dim, q * dim, dim, dim).diagonal().setConstant(gate(p, q));
        }
    }
    return {dim, full * joint.matrix * full.adjoint()};
}

JointState controlled_unitary(const CavityOperator& unitary, const JointState& joint) {
    JointState out = joint;
    out.branch(kGround) = unitary * joint.branch(kGround);
    return out;
}

JointDensity controlled_unitary(const CavityOperator& unitary, const JointDensity& joint) {
    const int dim = joint.dim;
    JointDensity out = joint;
    const auto gg = joint.matrix.block(0, 0, dim, dim);
    const auto ge = joint.matrix.block(0, dim, dim, dim);
    const auto eg = joint.matrix.block(dim, 0, dim, dim);
    out.matrix.block(0, 0, dim, dim) = unitary * gg * unitary.adjoint();
    out.matrix.block(0, dim, dim, dim) = unitary * ge;
    out.matrix.block(dim, 0, dim, dim) = eg * unitary.adjoint();
    return out;
}

JointState controlled_displacement(std::complex<double> alpha, const JointState& joint,
                                   const TruncatedSpace& space) {
    if (joint.dim != space.dim()) {
        throw ValidationError("joint", "cavity dimension does not match the Fock cutoff");
    }
    if (alpha == 0.0) {
        return joint;
    }
    return controlled_unitary(displacement_operator(alpha, space), joint);
}

JointDensity controlled_displacement(std::complex<double> alpha, const JointDensity& joint,
                                     const TruncatedSpace& space) {
    if (joint.dim != space.dim()) {
        throw ValidationError("joint", "cavity dimension does not match the Fock cutoff");
    }
    if (alpha == 0.0) {
        return joint;
    }
    return controlled_unitary(displacement_operator(alpha, space), joint);
}

std::complex<double> measure_sxy(const JointState& joint) {
    // 2 <g|rho_qubit|e> = 2 sum_n psi(g, n) conj(psi(e, n))
    return 2.0 * joint.branch(kExcited).dot(joint.branch(kGround));
}

std::complex<double> measure_sxy(const JointDensity& joint) {
    const int dim = joint.dim;
    return 2.0 * joint.matrix.block(0, dim, dim, dim).trace();
}

std::complex<double> measure_sxy_rotated(const JointState& joint) {
    const double sx = z_expectation(apply_qubit(readout_rotation_y(), joint));
    const double sy = z_expectation(apply_qubit(readout_rotation_x(), joint));
    return {sx, sy};
}

std::complex<double> measure_sxy_rotated(const JointDensity& joint) {
    const double sx = z_expectation(apply_qubit(readout_rotation_y(), joint));
    const double sy = z_expectation(apply_qubit(readout_rotation_x(), joint));
    return {sx, sy};
}

int thermal_cutoff(double nbar) {
    if (!(nbar >= 0.0)) {
        throw ValidationError("nbar", "thermal occupation must be >= 0");
    }
    if (nbar == 0.0) {
        return 1;
    }
    const double ratio = nbar / (nbar + 1.0);
    return static_cast<int>(std::ceil(std::log(1e-12) / std::log(ratio)));
}

int max_initial_level(const PhononInit& init, ThermalMode thermal_mode) {
    if (const auto* fock = std::get_if<Fock>(&init.state)) {
        return fock->n;
    }
    if (const auto* thermal = std::get_if<Thermal>(&init.state); thermal && thermal_mode == ThermalMode::Direct) {
        return thermal_cutoff(thermal->nbar) - 1;
    }
    return 0;
}

TruncatedSpace protocol_space(const ModeParams& mode, const PhononInit& init, ThermalMode thermal_mode,
                              std::optional<int> dim_override) {
    return heuristic_space(mode.huang_rhys, max_initial_level(init, thermal_mode), dim_override);
}

CavityEnsemble initial_ensemble(const PhononInit& init, const TruncatedSpace& space, ThermalMode thermal_mode,
                                double prep_fidelity) {
    if (const auto* fock = std::get_if<Fock>(&init.state)) {
        CavityEnsemble ensemble{{prep_fidelity, fock_state(fock->n, space)}};
        if (prep_fidelity < 1.0 && fock->n != 0) {
            ensemble.emplace_back(1.0 - prep_fidelity, fock_state(0, space));
        } else {
            ensemble.front().first = 1.0;
        }
        return ensemble;
    }
    const auto* thermal = std::get_if<Thermal>(&init.state);
    if (thermal && thermal_mode == ThermalMode::Direct && thermal->nbar > 0.0) {
        const int levels = thermal_cutoff(thermal->nbar);
        const double ratio = thermal->nbar / (thermal->nbar + 1.0);
        const double kept = 1.0 - std::pow(ratio, levels);
        CavityEnsemble ensemble;
        ensemble.reserve(static_cast<std::size_t>(levels));
        double weight = 1.0 / (thermal->nbar + 1.0);
        for (int n = 0; n < levels; ++n) {
            ensemble.emplace_back(weight / kept, fock_state(n, space));
            weight *= ratio;
        }
        return ensemble;
    }
    return {{1.0, fock_state(0, space)}};
}

std::complex<double> run_point(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                               const CavityEnsemble& ensemble, double t, const TruncatedSpace& space) {
    const QubitPrep prep{gamma_schedule(init, mode, t), phase_phi(params, mode, t)};
    const QubitState qubit = prep.state();
    const std::complex<double> alpha = displacement_amplitude(mode, t);
    const CavityOperator shift = alpha == 0.0 ? CavityOperator::Identity(space.dim(), space.dim())
                                              : displacement_operator(alpha, space);
    std::complex<double> value = 0.0;
    for (const auto& [weight, cavity] : ensemble) {
        const JointState joint = controlled_unitary(shift, JointState::product(qubit, cavity));
        value += weight * measure_sxy(joint);
    }
    return value;
}

std::complex<double> run_point(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                               double t, const TruncatedSpace& space, ThermalMode thermal_mode) {
    const CavityEnsemble ensemble = initial_ensemble(init, space, thermal_mode);
    return run_point(params, mode, schedule_init(init, thermal_mode), ensemble, t, space);
}

std::complex<double> run_point_mixed(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                                     const CavityDensity& rho, double t, const TruncatedSpace& space) {
    const QubitPrep prep{gamma_schedule(init, mode, t), phase_phi(params, mode, t)};
    const JointDensity joint = JointDensity::product(prep.state(), rho);
    return measure_sxy(controlled_displacement(displacement_amplitude(mode, t), joint, space));
}

CorrelationTrace run_trace(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                           const TimeGrid& grid, const std::optional<ImperfectionModel>& imperfection,
                           const RunOptions& options) {
    params.validate();
    mode.validate();
    init.validate();
    const int samples = grid.samples();
    const ImperfectionModel model = imperfection.value_or(ImperfectionModel{});
    model.validate();

    const TruncatedSpace space = protocol_space(mode, init, options.thermal_mode, options.dim_override);
    const CavityEnsemble ensemble = initial_ensemble(init, space, options.thermal_mode, model.prep_fidelity_F);
    const PhononInit prep_init = schedule_init(init, options.thermal_mode);

    CorrelationTrace trace{grid.dt, std::vector<std::complex<double>>(static_cast<std::size_t>(samples))};
    parallel_for(samples, options.jobs, [&](int k) {
        trace.values[static_cast<std::size_t>(k)] =
            model.contrast_f * run_point(params, mode, prep_init, ensemble, grid.time(k), space);
    });
    return trace;
}

} // namespace molspec
