#ifndef MOLSPEC_MOLECULE_HPP
#define MOLSPEC_MOLECULE_HPP

// Displaced harmonic oscillator model of one vibronic mode and the composite
// evolution U(t) = exp(i H_g t) exp(-i H_e t) it induces on the phonons.

#include <complex>

#include "molspec/fock.hpp"
#include "molspec/model.hpp"

namespace molspec {

/// H_g = omega0 a^dag a.
CavityOperator hamiltonian_ground(const ModeParams& mode, const TruncatedSpace& space);

/// H_e = omega_eg + omega0 (a - d)^dag (a - d), i.e. omega_eg + omega0 D(d) a^dag a D(-d).
/// Its ground state is the coherent state |d>, so D(-d) H_e D(d) = omega_eg + H_g.
CavityOperator hamiltonian_excited(const MoleculeParams& params, const ModeParams& mode,
                                   const TruncatedSpace& space);

/// phi(t) = omega_eg t + D sin(omega0 t).
double phase_phi(const MoleculeParams& params, const ModeParams& mode, double t);

/// alpha(t) = sqrt(D) (e^{i omega0 t} - 1).
std::complex<double> displacement_amplitude(const ModeParams& mode, double t);

/// U(t) = e^{-i phi(t)} D(alpha(t)); the production path.
CavityOperator evolution_closed(const MoleculeParams& params, const ModeParams& mode, double t,
                                const TruncatedSpace& space);

/// U(t) from the two matrix exponentials of the truncated Hamiltonians.
/// Verification only: O(dim^3) per call.
CavityOperator evolution_brute(const MoleculeParams& params, const ModeParams& mode, double t,
                               const TruncatedSpace& space);

/// exp(-i H t) for a Hermitian H via its eigendecomposition.
CavityOperator hermitian_propagator(const CavityOperator& hamiltonian, double t);

} // namespace molspec

#endif // MOLSPEC_MOLECULE_HPP
