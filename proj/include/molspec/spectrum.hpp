#ifndef MOLSPEC_SPECTRUM_HPP
#define MOLSPEC_SPECTRUM_HPP

// Absorption spectra from correlation traces, vibronic peak readout, Poisson
// progression fits and peak-height progressions over a swept parameter.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "molspec/model.hpp"

namespace molspec {

/// sigma(omega_k) on bins omega_k = k d_omega, k = 0 .. N-1.
struct Spectrum {
    double d_omega = 0.0;
    Eigen::VectorXd values;
    /// Imaginary part of the transform, kept for diagnostics only.
    Eigen::VectorXd imag;

    Eigen::Index size() const { return values.size(); }
    double omega(Eigen::Index k) const { return static_cast<double>(k) * d_omega; }
    /// Bin index of omega; throws GridMismatchError when omega is not a bin.
    Eigen::Index bin_of(double omega) const;
};

/// sigma(omega_k) = Re[(1/N) sum_m C(m dt) e^{i omega_k m dt}].
/// The 1/N normalization puts an undisplaced (D = 0) peak at exactly 1 and
/// makes the bins sum to Re C(0).
Spectrum dft_spectrum(const CorrelationTrace& trace);

struct PeakSeries {
    std::vector<int> j_indices;
    std::vector<double> peak_values;
    double base_frequency = 0.0;
    double spacing = 0.0;
};

/// Reads sigma at omega_eg + j omega0 for j = 0 .. j_max.
PeakSeries peak_values(const Spectrum& spectrum, double omega_eg, double omega0, int j_max);

struct PoissonFit {
    double amplitude = 0.0;
    double huang_rhys = 0.0;
    double residual_norm = 0.0;
};

/// Least-squares fit of A e^{-D} D^j / j! to the peak heights.
PoissonFit poisson_fit(const PeakSeries& peaks);

enum class SweptParameter { HuangRhys, ThermalOccupation, InverseTauOmega0 };

/// The fixed part of a progression: the molecule, its initial state, the
/// sampling grid and optional imperfections. The swept parameter overrides
/// D (of every mode), nbar or tau; tau is expressed through the first mode's omega0.
struct ProgressionCase {
    MoleculeParams molecule;
    PhononInit init;
    TimeGrid grid;
    std::optional<ImperfectionModel> imperfection;
};

struct ProgressionPoint {
    double parameter = 0.0;
    double peak = 0.0;
};

/// Molecule and initial state after applying one swept value.
std::pair<MoleculeParams, PhononInit> apply_sweep(const ProgressionCase& base, SweptParameter swept, double value);

/// For each value: oracle trace, transform, read the omega_eg + j omega0 bin.
/// Values are evaluated on up to `jobs` threads; the result does not depend on it.
std::vector<ProgressionPoint> peak_progression(const ProgressionCase& base, SweptParameter swept,
                                               std::span<const double> values, int j = 0, int jobs = 1);

/// Closed-form height of the omega_eg peak:
///   vacuum e^{-D}, Fock |1> e^{-D}(1-D)^2, thermal e^{-D(2nbar+1)} I_0(2D sqrt(nbar(nbar+1))).
double zero_phonon_peak_reference(const PhononState& state, double huang_rhys);

} // namespace molspec

#endif // MOLSPEC_SPECTRUM_HPP
