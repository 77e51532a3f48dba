#ifndef MOLSPEC_CIRCUIT_HPP
#define MOLSPEC_CIRCUIT_HPP

// Ancilla-qubit interferometry on a qubit (x) cavity system: prepare the
// qubit with the evolution phase in its azimuth, displace the cavity on the
// |g> branch only, and read <sigma_x> + i <sigma_y> off the qubit coherence.
//
// Qubit basis order is (g, e). Pauli operators treat |e> as the +1 eigenstate
// of sigma_z, so sigma_x + i sigma_y = 2 |e><g| and the protocol returns
// 2 <g|rho_qubit|e>.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "molspec/fock.hpp"
#include "molspec/model.hpp"

namespace molspec {

using QubitState = Eigen::Vector2cd;
using QubitOperator = Eigen::Matrix2cd;

inline constexpr int kGround = 0;
inline constexpr int kExcited = 1;

QubitOperator pauli_x();
QubitOperator pauli_y();
QubitOperator pauli_z();

/// R_phi(theta) = exp(-i theta/2 (cos phi sigma_x + sin phi sigma_y)).
QubitOperator rotation_gate(double theta, double phi_axis);

/// pi/2 readout pulses: R_Y maps sigma_x onto the Z axis, R_X maps sigma_y.
QubitOperator readout_rotation_x();
QubitOperator readout_rotation_y();

/// Qubit preparation e^{-i phi} sin(gamma/2) |g> + cos(gamma/2) |e>.
struct QubitPrep {
    double gamma = 0.0;
    double phi = 0.0;

    QubitState state() const;
    /// The same state reached by the pulse R_{-phi-pi/2}(pi - gamma) on |g>,
    /// which differs from state() by the global phase e^{i phi}.
    QubitState pulse_state() const;
};

/// Polar angle that encodes thermal and damping attenuation in the qubit
/// preparation: sin gamma = e^{2 D nbar (cos omega0 t - 1)} e^{-|t|/tau}.
double gamma_schedule(const PhononInit& init, const ModeParams& mode, double t);

/// Pure qubit (x) cavity state, amplitude of |q, n> at index q * dim + n.
struct JointState {
    int dim = 0;
    Eigen::VectorXcd amplitudes;

    static JointState product(const QubitState& qubit, const CavityState& cavity);
    auto branch(int q) { return amplitudes.segment(q * dim, dim); }
    auto branch(int q) const { return amplitudes.segment(q * dim, dim); }
};

/// Mixed qubit (x) cavity state in the same ordering.
struct JointDensity {
    int dim = 0;
    Eigen::MatrixXcd matrix;

    static JointDensity product(const QubitState& qubit, const CavityDensity& cavity);
    static JointDensity from_pure(const JointState& state);
};

JointState apply_qubit(const QubitOperator& gate, const JointState& joint);
JointDensity apply_qubit(const QubitOperator& gate, const JointDensity& joint);

/// |g><g| (x) U + |e><e| (x) I.
JointState controlled_unitary(const CavityOperator& unitary, const JointState& joint);
JointDensity controlled_unitary(const CavityOperator& unitary, const JointDensity& joint);

JointState controlled_displacement(std::complex<double> alpha, const JointState& joint,
                                   const TruncatedSpace& space);
JointDensity controlled_displacement(std::complex<double> alpha, const JointDensity& joint,
                                     const TruncatedSpace& space);

/// <sigma_x> + i <sigma_y> of the reduced qubit, evaluated directly.
std::complex<double> measure_sxy(const JointState& joint);
std::complex<double> measure_sxy(const JointDensity& joint);

/// The same quantity through readout pulses followed by Z-basis expectations.
std::complex<double> measure_sxy_rotated(const JointState& joint);
std::complex<double> measure_sxy_rotated(const JointDensity& joint);

/// How a thermal initial state is realized.
enum class ThermalMode {
    /// Cavity in vacuum; the thermal factor rides on the qubit angle gamma(t).
    Faithful,
    /// Cavity in the thermal ensemble (Boltzmann-weighted Fock runs), gamma = pi/2.
    Direct,
};

/// Weighted pure cavity states whose mixture is the initial phonon density.
using CavityEnsemble = std::vector<std::pair<double, CavityState>>;

/// Number of Fock levels carrying all but 1e-12 of the thermal weight.
int thermal_cutoff(double nbar);

/// Highest Fock level the run needs to prepare.
int max_initial_level(const PhononInit& init, ThermalMode thermal_mode);

TruncatedSpace protocol_space(const ModeParams& mode, const PhononInit& init, ThermalMode thermal_mode,
                              std::optional<int> dim_override = std::nullopt);

/// Initial cavity ensemble; a Fock preparation of fidelity F < 1 is mixed with vacuum.
CavityEnsemble initial_ensemble(const PhononInit& init, const TruncatedSpace& space, ThermalMode thermal_mode,
                                double prep_fidelity = 1.0);

/// One circuit execution at time t: prepare(gamma(t), phi(t)), controlled
/// D(alpha(t)), measure. Returns the simulated C(t).
std::complex<double> run_point(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                               double t, const TruncatedSpace& space,
                               ThermalMode thermal_mode = ThermalMode::Faithful);

/// Same circuit on an explicit cavity ensemble; `init` only supplies gamma(t).
std::complex<double> run_point(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                               const CavityEnsemble& ensemble, double t, const TruncatedSpace& space);

/// Same circuit propagating a joint density matrix from the mixed cavity state `rho`.
std::complex<double> run_point_mixed(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                                     const CavityDensity& rho, double t, const TruncatedSpace& space);

struct RunOptions {
    ThermalMode thermal_mode = ThermalMode::Faithful;
    std::optional<int> dim_override;
    int jobs = 1;
};

/// Circuit-simulated trace over the grid. Grid points are independent, so
/// results do not depend on `options.jobs`.
CorrelationTrace run_trace(const MoleculeParams& params, const ModeParams& mode, const PhononInit& init,
                           const TimeGrid& grid, const std::optional<ImperfectionModel>& imperfection = std::nullopt,
                           const RunOptions& options = {});

} // namespace molspec

#endif // MOLSPEC_CIRCUIT_HPP
