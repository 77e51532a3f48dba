#include "molspec/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "molspec/correlation.hpp"
#include "molspec/errors.hpp"
#include "molspec/parallel.hpp"

namespace molspec {

Eigen::Index Spectrum::bin_of(double omega) const {
    const double position = omega / d_omega;
    const double nearest = std::round(position);
    if (std::abs(position - nearest) > 1e-9 * std::max(1.0, std::abs(position))) {
        throw GridMismatchError("frequency " + std::to_string(omega) + " falls between DFT bins (bin width " +
                                std::to_string(d_omega) + ")");
    }
    if (nearest < 0 || nearest >= static_cast<double>(size())) {
        throw GridMismatchError("frequency " + std::to_string(omega) + " lies outside the spectrum range");
    }
    return static_cast<Eigen::Index>(nearest);
}

Spectrum dft_spectrum(const CorrelationTrace& trace) {
    if (trace.values.empty() || !(trace.dt > 0.0)) {
        throw ValidationError("trace", "needs at least one sample and dt > 0");
    }
    const auto n = static_cast<Eigen::Index>(trace.size());
    // unit roots indexed by (k m) mod N keep every twiddle exact to one rounding
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        roots[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / n);
    }

    Spectrum spectrum{2.0 * std::numbers::pi / (static_cast<double>(n) * trace.dt), Eigen::VectorXd(n),
                      Eigen::VectorXd(n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        std::complex<double> sum = 0.0;
        Eigen::Index r = 0;
        for (Eigen::Index m = 0; m < n; ++m) {
            sum += trace.values[static_cast<std::size_t>(m)] * roots[static_cast<std::size_t>(r)];
            r += k;
            if (r >= n) {
                r -= n;
            }
        }
        sum /= static_cast<double>(n);
        spectrum.values(k) = sum.real();
        spectrum.imag(k) = sum.imag();
    }
    return spectrum;
}

PeakSeries peak_values(const Spectrum& spectrum, double omega_eg, double omega0, int j_max) {
    if (j_max < 0) {
        throw ValidationError("j_max", "must be >= 0");
    }
    PeakSeries series{{}, {}, omega_eg, omega0};
    for (int j = 0; j <= j_max; ++j) {
        series.j_indices.push_back(j);
        series.peak_values.push_back(spectrum.values(spectrum.bin_of(omega_eg + j * omega0)));
    }
    return series;
}

PoissonFit poisson_fit(const PeakSeries& peaks) {
    const auto& y = peaks.peak_values;
    if (y.size() < 3 || y.size() != peaks.j_indices.size()) {
        throw FitError("Poisson fit needs at least three peaks");
    }
    for (double v : y) {
        if (!(v >= 0.0)) {
            throw FitError("Poisson fit needs non-negative peak heights");
        }
    }
    const double total = std::accumulate(y.begin(), y.end(), 0.0);
    if (total <= 0.0) {
        throw FitError("Poisson fit of an all-zero peak series is undetermined");
    }

    const std::size_t count = y.size();
    auto poisson = [&](double d) {
        Eigen::VectorXd p(static_cast<Eigen::Index>(count));
        for (std::size_t i = 0; i < count; ++i) {
            const int j = peaks.j_indices[i];
            p(static_cast<Eigen::Index>(i)) = std::exp(-d + j * std::log(std::max(d, 1e-300)) - std::lgamma(j + 1.0));
            if (d == 0.0) {
                p(static_cast<Eigen::Index>(i)) = j == 0 ? 1.0 : 0.0;
            }
        }
        return p;
    };
    const Eigen::Map<const Eigen::VectorXd> data(y.data(), static_cast<Eigen::Index>(count));
    auto residual = [&](double a, double d) { return (data - a * poisson(d)).norm(); };

    double d = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        d += peaks.j_indices[i] * y[i];
    }
    d /= total;
    double a = total;
    double lambda = 1e-3;
    double current = residual(a, d);

    // Levenberg-Marquardt on (A, D); d P_j / dD = P_{j-1} - P_j
    for (int iter = 0; iter < 500; ++iter) {
        const Eigen::VectorXd p = poisson(d);
        Eigen::MatrixXd jac(static_cast<Eigen::Index>(count), 2);
        for (std::size_t i = 0; i < count; ++i) {
            const auto row = static_cast<Eigen::Index>(i);
            const int j = peaks.j_indices[i];
            const double lower = j == 0 ? 0.0 : (d == 0.0 ? (j == 1 ? 1.0 : 0.0) : p(row) * j / d);
            jac(row, 0) = p(row);
            jac(row, 1) = a * (lower - p(row));
        }
        const Eigen::VectorXd r = data - a * p;
        const Eigen::Matrix2d normal = jac.transpose() * jac;
        const Eigen::Vector2d gradient = jac.transpose() * r;

        bool improved = false;
        for (int attempt = 0; attempt < 60 && !improved; ++attempt) {
            Eigen::Matrix2d damped = normal;
            damped.diagonal() *= 1.0 + lambda;
            const Eigen::Vector2d step = damped.ldlt().solve(gradient);
            const double a_next = a + step(0);
            const double d_next = std::max(0.0, d + step(1));
            const double trial = residual(a_next, d_next);
            if (trial <= current) {
                const double change = std::abs(a_next - a) + std::abs(d_next - d);
                a = a_next;
                d = d_next;
                current = trial;
                lambda = std::max(lambda / 10.0, 1e-15);
                improved = true;
                if (change < 1e-15 * (1.0 + std::abs(a) + std::abs(d))) {
                    return {a, d, current};
                }
            } else {
                lambda *= 10.0;
            }
        }
        if (!improved) {
            break;
        }
    }
    return {a, d, current};
}

std::pair<MoleculeParams, PhononInit> apply_sweep(const ProgressionCase& base, SweptParameter swept, double value) {
    MoleculeParams molecule = base.molecule;
    PhononInit init = base.init;
    switch (swept) {
    case SweptParameter::HuangRhys:
        for (auto& mode : molecule.modes) {
            mode.huang_rhys = value;
        }
        break;
    case SweptParameter::ThermalOccupation:
        init.state = Thermal{value};
        break;
    case SweptParameter::InverseTauOmega0:
        if (!(value > 0.0)) {
            throw ValidationError("inv_tau_omega0", "must be > 0");
        }
        init.damping_tau = 1.0 / (value * molecule.modes.front().omega0);
        break;
    }
    return {molecule, init};
}

std::vector<ProgressionPoint> peak_progression(const ProgressionCase& base, SweptParameter swept,
                                               std::span<const double> values, int j, int jobs) {
    base.molecule.validate();
    base.grid.validate();
    std::vector<ProgressionPoint> points(values.size());
    parallel_for(static_cast<int>(values.size()), jobs, [&](int k) {
        const double value = values[static_cast<std::size_t>(k)];
        const auto [molecule, init] = apply_sweep(base, swept, value);
        const Spectrum spectrum = dft_spectrum(oracle_trace(molecule, init, base.grid, base.imperfection));
        const PeakSeries series = peak_values(spectrum, molecule.omega_eg, molecule.modes.front().omega0, j);
        points[static_cast<std::size_t>(k)] = {value, series.peak_values.back()};
    });
    return points;
}

double zero_phonon_peak_reference(const PhononState& state, double huang_rhys) {
    const double d = huang_rhys;
    if (std::holds_alternative<Vacuum>(state)) {
        return std::exp(-d);
    }
    if (const auto* fock = std::get_if<Fock>(&state)) {
        if (fock->n == 0) {
            return std::exp(-d);
        }
        if (fock->n == 1) {
            return std::exp(-d) * (1.0 - d) * (1.0 - d);
        }
        throw ValidationError("init.n", "closed-form peak reference covers Fock levels 0 and 1 only");
    }
    const double nbar = std::get<Thermal>(state).nbar;
    return std::exp(-d * (2.0 * nbar + 1.0)) * std::cyl_bessel_i(0.0, 2.0 * d * std::sqrt(nbar * (nbar + 1.0)));
}

} // namespace molspec
