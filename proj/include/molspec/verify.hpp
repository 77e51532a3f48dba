#ifndef MOLSPEC_VERIFY_HPP
#define MOLSPEC_VERIFY_HPP

// Self-verification: the acceptance suite that checks the circuit simulation,
// spectra and fits against the closed-form references.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "molspec/circuit.hpp"
#include "molspec/model.hpp"

namespace molspec {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    /// Failure reason when a check could not be evaluated.
    std::string detail;
};

using TraceFunction =
    std::function<CorrelationTrace(const MoleculeParams&, const ModeParams&, const PhononInit&, const TimeGrid&,
                                   const std::optional<ImperfectionModel>&, const RunOptions&)>;

/// The pieces a check run can swap out, so deliberate mutations can be shown to fail.
struct VerifyHooks {
    TraceFunction circuit_trace = run_trace;
    TimeGrid grid{1.0, 900.0};
    int jobs = 1;
};

/// Runs every criterion in order; exceptions inside a criterion mark it failed.
std::vector<CriterionResult> run_acceptance(const VerifyHooks& hooks = {});

/// One report line: "[PASS] 1 name  max_error=... tol=... (0.12 s)".
std::string format_result(const CriterionResult& result);

/// Brute-force C(t) = <00| e^{i H_g t} e^{-i H_e t} |00> for two vacuum modes
/// on a dim x dim Fock grid, sampled on `grid`. Each mode's excited
/// Hamiltonian is omega0 a^dag a conjugated by the unitary truncated displacement.
std::vector<std::complex<double>> two_mode_tensor_trace(double omega_eg, const ModeParams& first,
                                                        const ModeParams& second, const TimeGrid& grid, int dim);

} // namespace molspec

#endif // MOLSPEC_VERIFY_HPP
