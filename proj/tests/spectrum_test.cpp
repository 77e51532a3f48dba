#include "molspec/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "molspec/correlation.hpp"
#include "molspec/errors.hpp"

using namespace molspec;
using std::numbers::pi;

namespace {

const TimeGrid kReferenceGrid{1.0, 900.0};

MoleculeParams molecule_with(double d) {
    MoleculeParams params;
    params.modes = {ModeParams{pi / 90.0, d}};
    return params;
}

double poisson(double d, int j) { return std::exp(-d) * std::pow(d, j) / std::tgamma(j + 1.0); }

// Zero-frequency Fourier coefficient of the phase-stripped correlation,
// averaged over one vibrational period with a plain Riemann sum.
double period_average(const MoleculeParams& params, const PhononInit& init) {
    const ModeParams& mode = params.modes[0];
    const int samples = 4096;
    const double period = 2.0 * pi / mode.omega0;
    std::complex<double> sum = 0.0;
    for (int m = 0; m < samples; ++m) {
        const double t = period * m / samples;
        sum += std::exp(std::complex<double>(0.0, params.omega_eg * t)) * corr_oracle(params, mode, init, t);
    }
    return sum.real() / samples;
}

// Sum of the five bins around a peak divided by its height.
double effective_width(const Spectrum& spectrum, Eigen::Index bin) {
    return spectrum.values.segment(bin - 2, 5).sum() / spectrum.values(bin);
}

} // namespace

TEST(dft_spectrum, undisplaced_line) {
    const MoleculeParams params = molecule_with(0.0);
    const Spectrum spectrum = dft_spectrum(oracle_trace(params, PhononInit::vacuum(), kReferenceGrid));
    ASSERT_EQ(spectrum.size(), 900);
    EXPECT_NEAR(spectrum.d_omega, 2.0 * pi / 900.0, 1e-18);
    EXPECT_EQ(spectrum.bin_of(pi / 5.0), 90);
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
        EXPECT_NEAR(spectrum.values(k), k == 90 ? 1.0 : 0.0, 1e-12) << k;
    }
}

TEST(dft_spectrum, zero_trace) {
    const CorrelationTrace zero{1.0, std::vector<std::complex<double>>(64, 0.0)};
    const Spectrum spectrum = dft_spectrum(zero);
    EXPECT_TRUE((spectrum.values.array() == 0.0).all());
    EXPECT_THROW(dft_spectrum(CorrelationTrace{1.0, {}}), ValidationError);
    EXPECT_THROW(dft_spectrum(CorrelationTrace{0.0, {1.0}}), ValidationError);
}

TEST(dft_spectrum, matches_naive_sum) {
    const CorrelationTrace trace = oracle_trace(molecule_with(1.3), PhononInit::fock(1).damped(200.0), TimeGrid{1.0, 120.0});
    const Spectrum spectrum = dft_spectrum(trace);
    for (int k : {0, 7, 24, 119}) {
        std::complex<double> sum = 0.0;
        for (int m = 0; m < 120; ++m) {
            sum += trace.values[static_cast<std::size_t>(m)] * std::exp(std::complex<double>(0.0, 2.0 * pi * k * m / 120.0));
        }
        EXPECT_NEAR(spectrum.values(k), sum.real() / 120.0, 1e-14);
        EXPECT_NEAR(spectrum.imag(k), sum.imag() / 120.0, 1e-14);
    }
}

TEST(peak_values, vacuum_poisson_comb) {
    const MoleculeParams params = molecule_with(1.0);
    const Spectrum spectrum = dft_spectrum(oracle_trace(params, PhononInit::vacuum(), kReferenceGrid));
    const PeakSeries peaks = peak_values(spectrum, params.omega_eg, params.modes[0].omega0, 3);
    ASSERT_EQ(peaks.peak_values.size(), 4u);
    const double expected[] = {0.3679, 0.3679, 0.1839, 0.0613};
    for (int j = 0; j < 4; ++j) {
        EXPECT_EQ(peaks.j_indices[static_cast<std::size_t>(j)], j);
        EXPECT_NEAR(peaks.peak_values[static_cast<std::size_t>(j)], expected[j], 5e-5);
        EXPECT_NEAR(peaks.peak_values[static_cast<std::size_t>(j)], std::exp(-1.0) / std::tgamma(j + 1.0), 1e-12);
    }

    const MoleculeParams flat = molecule_with(0.0);
    const PeakSeries single = peak_values(dft_spectrum(oracle_trace(flat, PhononInit::vacuum(), kReferenceGrid)),
                                          flat.omega_eg, flat.modes[0].omega0, 5);
    EXPECT_NEAR(single.peak_values[0], 1.0, 1e-12);
    for (std::size_t j = 1; j < single.peak_values.size(); ++j) {
        EXPECT_NEAR(single.peak_values[j], 0.0, 1e-12);
    }
}

TEST(peak_values, bin_exact_up_to_twenty_quanta) {
    for (double d : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        const MoleculeParams params = molecule_with(d);
        const Spectrum spectrum = dft_spectrum(oracle_trace(params, PhononInit::vacuum(), kReferenceGrid));
        const PeakSeries peaks = peak_values(spectrum, params.omega_eg, params.modes[0].omega0, 20);
        for (int j = 0; j <= 20; ++j) {
            EXPECT_NEAR(peaks.peak_values[static_cast<std::size_t>(j)], d == 0.0 ? (j == 0 ? 1.0 : 0.0) : poisson(d, j),
                        1e-10)
                << d << " " << j;
        }
    }
}

TEST(peak_values, fock_one_zero_phonon_line_vanishes_at_unit_shift) {
    const MoleculeParams params = molecule_with(1.0);
    const Spectrum spectrum = dft_spectrum(oracle_trace(params, PhononInit::fock(1), kReferenceGrid));
    const PeakSeries peaks = peak_values(spectrum, params.omega_eg, params.modes[0].omega0, 0);
    EXPECT_NEAR(peaks.peak_values[0], 0.0, 1e-9);
}

TEST(peak_values, grid_mismatch) {
    const MoleculeParams params = molecule_with(1.0);
    const Spectrum shifted = dft_spectrum(oracle_trace(params, PhononInit::vacuum(), TimeGrid{1.0, 901.0}));
    EXPECT_THROW(peak_values(shifted, params.omega_eg, params.modes[0].omega0, 3), GridMismatchError);
    const Spectrum spectrum = dft_spectrum(oracle_trace(params, PhononInit::vacuum(), kReferenceGrid));
    EXPECT_THROW(peak_values(spectrum, params.omega_eg, 0.0123, 2), GridMismatchError);
    EXPECT_THROW(peak_values(spectrum, params.omega_eg, params.modes[0].omega0, 200), GridMismatchError);
    EXPECT_THROW(peak_values(spectrum, params.omega_eg, params.modes[0].omega0, -1), ValidationError);
}

TEST(poisson_fit, exact_models) {
    for (double d : {0.5, 1.0, 4.0}) {
        for (double amplitude : {1.0, 0.83}) {
            PeakSeries peaks{{}, {}, pi / 5.0, pi / 90.0};
            for (int j = 0; j <= 12; ++j) {
                peaks.j_indices.push_back(j);
                peaks.peak_values.push_back(amplitude * poisson(d, j));
            }
            const PoissonFit fit = poisson_fit(peaks);
            EXPECT_NEAR(fit.huang_rhys, d, 1e-6) << d;
            EXPECT_NEAR(fit.amplitude, amplitude, 1e-6) << d;
            EXPECT_LT(fit.residual_norm, 1e-9);
        }
    }
}

TEST(poisson_fit, from_spectrum) {
    const MoleculeParams params = molecule_with(2.0);
    const Spectrum spectrum = dft_spectrum(oracle_trace(params, PhononInit::vacuum(), kReferenceGrid));
    const PoissonFit fit = poisson_fit(peak_values(spectrum, params.omega_eg, params.modes[0].omega0, 10));
    EXPECT_NEAR(fit.huang_rhys, 2.0, 1e-6);
    EXPECT_NEAR(fit.amplitude, 1.0, 1e-6);
}

TEST(poisson_fit, degenerate_inputs) {
    PeakSeries zeros{{0, 1, 2, 3}, {0.0, 0.0, 0.0, 0.0}, 0.0, 1.0};
    EXPECT_THROW(poisson_fit(zeros), FitError);
    PeakSeries short_series{{0, 1}, {0.5, 0.3}, 0.0, 1.0};
    EXPECT_THROW(poisson_fit(short_series), FitError);
    PeakSeries negative{{0, 1, 2}, {0.5, -0.3, 0.1}, 0.0, 1.0};
    EXPECT_THROW(poisson_fit(negative), FitError);
}

TEST(peak_progression, vacuum_and_fock_curves) {
    const ProgressionCase vacuum{molecule_with(1.0), PhononInit::vacuum(), kReferenceGrid};
    const std::vector<double> ds = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    const auto points = peak_progression(vacuum, SweptParameter::HuangRhys, ds);
    ASSERT_EQ(points.size(), ds.size());
    EXPECT_NEAR(points[0].peak, 1.0, 1e-12);
    EXPECT_NEAR(points[2].peak, 0.3679, 5e-5);
    for (const auto& point : points) {
        EXPECT_NEAR(point.peak, std::exp(-point.parameter), 1e-6) << point.parameter;
        EXPECT_NEAR(point.peak, zero_phonon_peak_reference(Vacuum{}, point.parameter), 1e-6);
    }

    const ProgressionCase fock{molecule_with(1.0), PhononInit::fock(1), kReferenceGrid};
    for (const auto& point : peak_progression(fock, SweptParameter::HuangRhys, ds)) {
        const double expected = std::exp(-point.parameter) * std::pow(1.0 - point.parameter, 2);
        EXPECT_NEAR(point.peak, expected, 1e-6) << point.parameter;
        EXPECT_NEAR(period_average(apply_sweep(fock, SweptParameter::HuangRhys, point.parameter).first,
                                   PhononInit::fock(1)),
                    expected, 1e-12);
    }
    const std::vector<double> unit = {1.0};
    EXPECT_NEAR(peak_progression(fock, SweptParameter::HuangRhys, unit)[0].peak, 0.0, 1e-9);
}

TEST(peak_progression, thermal_curve_matches_zero_frequency_coefficient) {
    const ProgressionCase thermal{molecule_with(1.0), PhononInit::thermal(0.0), kReferenceGrid};
    const std::vector<double> nbars = {0.0, 0.5, 1.0, 2.0, 4.0};
    double previous = 2.0;
    for (const auto& point : peak_progression(thermal, SweptParameter::ThermalOccupation, nbars)) {
        const double reference = zero_phonon_peak_reference(Thermal{point.parameter}, 1.0);
        EXPECT_NEAR(period_average(thermal.molecule, PhononInit::thermal(point.parameter)), reference, 1e-12);
        EXPECT_NEAR(point.peak, reference, 1e-6) << point.parameter;
        EXPECT_LT(point.peak, previous);
        previous = point.peak;
    }
}

TEST(peak_progression, damped_curve_and_worker_independence) {
    const ProgressionCase damped{molecule_with(1.0), PhononInit::vacuum(), kReferenceGrid};
    const std::vector<double> rates = {0.25, 0.5, 1.0, 2.0};
    const auto serial = peak_progression(damped, SweptParameter::InverseTauOmega0, rates);
    const auto parallel = peak_progression(damped, SweptParameter::InverseTauOmega0, rates, 0, 3);
    for (std::size_t k = 0; k < rates.size(); ++k) {
        EXPECT_EQ(serial[k].peak, parallel[k].peak);
        EXPECT_GT(serial[k].peak, 0.0);
        const auto [molecule, init] = apply_sweep(damped, SweptParameter::InverseTauOmega0, rates[k]);
        EXPECT_NEAR(*init.damping_tau, 1.0 / (rates[k] * pi / 90.0), 1e-12);
        const Spectrum spectrum = dft_spectrum(oracle_trace(molecule, init, kReferenceGrid));
        EXPECT_EQ(serial[k].peak, spectrum.values(spectrum.bin_of(molecule.omega_eg)));
    }
    EXPECT_THROW(apply_sweep(damped, SweptParameter::InverseTauOmega0, 0.0), ValidationError);
}

TEST(zero_phonon_peak_reference, closed_forms) {
    EXPECT_DOUBLE_EQ(zero_phonon_peak_reference(Vacuum{}, 2.0), std::exp(-2.0));
    EXPECT_DOUBLE_EQ(zero_phonon_peak_reference(Fock{0}, 2.0), std::exp(-2.0));
    EXPECT_EQ(zero_phonon_peak_reference(Fock{1}, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(zero_phonon_peak_reference(Thermal{0.0}, 1.5), std::exp(-1.5));
    EXPECT_THROW(zero_phonon_peak_reference(Fock{2}, 1.0), ValidationError);
}

TEST(spectrum, sum_rule) {
    const double omega0 = pi / 90.0;
    const std::vector<PhononInit> inits = {PhononInit::vacuum(), PhononInit::fock(1), PhononInit::thermal(1.0),
                                           PhononInit::vacuum().damped(1.0 / (0.5 * omega0))};
    for (const PhononInit& init : inits) {
        const CorrelationTrace trace = oracle_trace(molecule_with(1.0), init, kReferenceGrid);
        EXPECT_NEAR(dft_spectrum(trace).values.sum(), trace.values[0].real(), 1e-9);
        EXPECT_NEAR(dft_spectrum(trace).values.sum(), 1.0, 1e-9);
    }
}

TEST(spectrum, linear_in_contrast) {
    const MoleculeParams params = molecule_with(1.0);
    const Spectrum ideal = dft_spectrum(oracle_trace(params, PhononInit::fock(1), kReferenceGrid));
    const Spectrum scaled =
        dft_spectrum(oracle_trace(params, PhononInit::fock(1), kReferenceGrid, ImperfectionModel{0.83, 1.0}));
    EXPECT_LT((scaled.values - 0.83 * ideal.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(spectrum, damping_broadens_lines) {
    const MoleculeParams params = molecule_with(1.0);
    const double omega0 = params.modes[0].omega0;
    double previous = 0.0;
    for (double rate : {0.25, 0.5, 1.0}) {
        const Spectrum spectrum =
            dft_spectrum(oracle_trace(params, PhononInit::vacuum().damped(1.0 / (rate * omega0)), kReferenceGrid));
        const Eigen::Index bin = spectrum.bin_of(params.omega_eg);
        EXPECT_GT(spectrum.values(bin), 0.0);
        const double width = effective_width(spectrum, bin);
        EXPECT_GT(width, previous) << rate;
        previous = width;
    }
}
