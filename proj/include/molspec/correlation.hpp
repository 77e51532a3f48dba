#ifndef MOLSPEC_CORRELATION_HPP
#define MOLSPEC_CORRELATION_HPP

// Closed-form dipole correlation functions C(t) of the displaced oscillator.
// These are the analytic references the circuit simulation is checked
// against, and the fast path for parameter sweeps.

#include <complex>
#include <optional>
#include <span>
#include <utility>

#include "molspec/model.hpp"

namespace molspec {

/// Generalized Laguerre polynomial L_n^{(k)}(x) by the three-term recurrence.
double laguerre(int n, int k, double x);
inline double laguerre(int n, double x) { return laguerre(n, 0, x); }

/// e^{-i omega_eg t} e^{D (e^{-i omega0 t} - 1)}.
std::complex<double> corr_vacuum(const MoleculeParams& params, const ModeParams& mode, double t);

/// e^{-i phi(t)} e^{-|alpha|^2/2} L_n(|alpha|^2) with alpha = sqrt(D)(e^{i omega0 t} - 1).
std::complex<double> corr_fock(const MoleculeParams& params, const ModeParams& mode, int n, double t);

/// e^{-i omega_eg t + D [(nbar + 1)(e^{-i omega0 t} - 1) + nbar (e^{i omega0 t} - 1)]}.
std::complex<double> corr_thermal(const MoleculeParams& params, const ModeParams& mode, double nbar,
                                  double t);

/// e^{-t/tau} C(t).
std::complex<double> apply_damping(std::complex<double> value, double t, double tau);

/// Single-mode oracle for any initial state, damping included.
std::complex<double> corr_oracle(const MoleculeParams& params, const ModeParams& mode,
                                 const PhononInit& init, double t);

/// e^{-i omega_eg t} prod_k F_k(t) for a tensor-product initial state, each
/// F_k being the single-mode correlation with its electronic phase removed.
std::complex<double> corr_multimode(double omega_eg, std::span<const std::pair<ModeParams, PhononInit>> inits,
                                    double t);

/// Oracle trace on a grid. With an imperfection model, Fock preparation is
/// mixed with vacuum at fidelity F and every value is scaled by f.
CorrelationTrace oracle_trace(const MoleculeParams& params, const PhononInit& init, const TimeGrid& grid,
                              const std::optional<ImperfectionModel>& imperfection = std::nullopt);

} // namespace molspec

#endif // MOLSPEC_CORRELATION_HPP
