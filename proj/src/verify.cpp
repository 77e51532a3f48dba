#include "molspec/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "molspec/correlation.hpp"
#include "molspec/errors.hpp"
#include "molspec/molecule.hpp"
#include "molspec/spectrum.hpp"

namespace molspec {
namespace {

using std::numbers::pi;

constexpr double kOmega0 = pi / 90.0;

struct Check {
    double error;
    double tolerance;
};

using Checks = std::vector<Check>;

MoleculeParams single_mode(double d) {
    MoleculeParams params;
    params.modes = {ModeParams{kOmega0, d}};
    return params;
}

double max_difference(const CorrelationTrace& a, const CorrelationTrace& b) {
    if (a.size() != b.size()) {
        throw GridMismatchError("trace lengths differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
    }
    return worst;
}

struct Case {
    double d;
    PhononInit init;
};

// The four experiment families of the protocol: vacuum, Fock |1>, thermal, damped vacuum.
std::vector<Case> reference_cases() {
    return {
        {0.0, PhononInit::vacuum()},
        {1.0, PhononInit::vacuum()},
        {4.0, PhononInit::vacuum()},
        {0.5, PhononInit::fock(1)},
        {1.0, PhononInit::fock(1)},
        {2.0, PhononInit::fock(1)},
        {1.0, PhononInit::thermal(0.5)},
        {1.0, PhononInit::thermal(1.0)},
        {1.0, PhononInit::thermal(2.0)},
        {1.0, PhononInit::vacuum().damped(1.0 / (0.25 * kOmega0))},
        {1.0, PhononInit::vacuum().damped(1.0 / (0.5 * kOmega0))},
        {1.0, PhononInit::vacuum().damped(1.0 / kOmega0)},
    };
}

class Suite {
public:
    explicit Suite(const VerifyHooks& hooks) : hooks_(hooks) {}

    CorrelationTrace circuit(const MoleculeParams& params, const PhononInit& init,
                             const std::optional<ImperfectionModel>& imperfection = std::nullopt,
                             ThermalMode mode = ThermalMode::Faithful) const {
        return hooks_.circuit_trace(params, params.modes.front(), init, hooks_.grid, imperfection,
                                    RunOptions{mode, std::nullopt, hooks_.jobs});
    }

    Checks circuit_vs_oracle() const {
        Checks checks;
        for (const Case& c : reference_cases()) {
            const MoleculeParams params = single_mode(c.d);
            checks.push_back({max_difference(circuit(params, c.init), oracle_trace(params, c.init, hooks_.grid)), 1e-8});
        }
        return checks;
    }

    static Checks evolution_identity() {
        Checks checks;
        for (double d : {0.5, 1.0, 4.0}) {
            const MoleculeParams params = single_mode(d);
            const ModeParams& mode = params.modes.front();
            const TruncatedSpace space = heuristic_space(d, 9);
            const int s = space.safe_dim();
            for (double t : {10.0, 45.0, 90.0, 180.0, 450.0}) {
                const CavityOperator closed = evolution_closed(params, mode, t, space);
                const CavityOperator brute = evolution_brute(params, mode, t, space);
                checks.push_back({(closed.topLeftCorner(s, s) - brute.topLeftCorner(s, s)).cwiseAbs().maxCoeff(), 1e-7});
            }
        }
        return checks;
    }

    Checks poisson_progression() const {
        Checks checks;
        for (double d : {0.0, 1.0, 4.0}) {
            const MoleculeParams params = single_mode(d);
            const Spectrum spectrum = dft_spectrum(circuit(params, PhononInit::vacuum()));
            const PeakSeries peaks = peak_values(spectrum, params.omega_eg, kOmega0, 20);
            for (int j = 0; j <= 20; ++j) {
                const double expected =
                    d == 0.0 ? (j == 0 ? 1.0 : 0.0) : std::exp(-d + j * std::log(d) - std::lgamma(j + 1.0));
                checks.push_back({std::abs(peaks.peak_values[static_cast<std::size_t>(j)] - expected), 1e-6});
            }
            if (d == 0.0) {
                const Eigen::Index line = spectrum.bin_of(params.omega_eg);
                double stray = 0.0;
                for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
                    stray = std::max(stray, k == line ? 0.0 : std::abs(spectrum.values(k)));
                }
                checks.push_back({stray, 1e-6});
            }
        }
        return checks;
    }

    std::vector<ProgressionPoint> shift_progression(const PhononInit& init) const {
        const ProgressionCase base{single_mode(1.0), init, hooks_.grid, std::nullopt};
        std::vector<double> ds;
        for (int k = 0; k <= 8; ++k) {
            ds.push_back(0.5 * k);
        }
        return peak_progression(base, SweptParameter::HuangRhys, ds, 0, hooks_.jobs);
    }

    Checks vacuum_peak_curve() const {
        Checks checks;
        for (const ProgressionPoint& point : shift_progression(PhononInit::vacuum())) {
            checks.push_back({std::abs(point.peak - std::exp(-point.parameter)), 1e-6});
        }
        return checks;
    }

    Checks fock_peak_curve() const {
        Checks checks;
        for (const ProgressionPoint& point : shift_progression(PhononInit::fock(1))) {
            checks.push_back({std::abs(point.peak - zero_phonon_peak_reference(Fock{1}, point.parameter)), 1e-6});
            if (point.parameter == 1.0) {
                checks.push_back({std::abs(point.peak), 1e-9});
            }
        }
        return checks;
    }

    Checks thermal_trick() const {
        Checks checks;
        const MoleculeParams params = single_mode(1.0);
        for (double nbar : {0.5, 1.0, 2.0}) {
            const PhononInit init = PhononInit::thermal(nbar);
            checks.push_back({max_difference(circuit(params, init, std::nullopt, ThermalMode::Faithful),
                                             circuit(params, init, std::nullopt, ThermalMode::Direct)),
                              1e-8});
        }
        return checks;
    }

    Checks damping_factorization() const {
        Checks checks;
        const MoleculeParams params = single_mode(1.0);
        const double tau = 1.0 / (0.5 * kOmega0);
        for (const PhononInit& init : {PhononInit::vacuum(), PhononInit::fock(1), PhononInit::thermal(1.0)}) {
            const CorrelationTrace plain = circuit(params, init);
            CorrelationTrace expected = plain;
            for (std::size_t k = 0; k < expected.size(); ++k) {
                expected.values[k] *= std::exp(-plain.time(k) / tau);
            }
            checks.push_back({max_difference(circuit(params, init.damped(tau)), expected), 1e-10});
        }
        return checks;
    }

    Checks sum_rule() const {
        Checks checks;
        const MoleculeParams params = single_mode(1.0);
        for (const PhononInit& init : {PhononInit::vacuum(), PhononInit::fock(1), PhononInit::thermal(1.0),
                                       PhononInit::vacuum().damped(1.0 / (0.5 * kOmega0))}) {
            const CorrelationTrace trace = circuit(params, init);
            const double total = dft_spectrum(trace).values.sum();
            checks.push_back({std::abs(total - trace.values.front().real()), 1e-9});
            checks.push_back({std::abs(total - 1.0), 1e-9});
        }
        return checks;
    }

    Checks contrast_linearity() const {
        Checks checks;
        const double f = 0.83;
        for (double d : {1.0, 2.0}) {
            const MoleculeParams params = single_mode(d);
            const Spectrum ideal = dft_spectrum(circuit(params, PhononInit::vacuum()));
            const Spectrum scaled = dft_spectrum(circuit(params, PhononInit::vacuum(), ImperfectionModel{f, 1.0}));
            checks.push_back({(scaled.values - f * ideal.values).cwiseAbs().maxCoeff(), 1e-12});
            const PoissonFit fit = poisson_fit(peak_values(scaled, params.omega_eg, kOmega0, 20));
            checks.push_back({std::abs(fit.amplitude - f), 1e-6});
            checks.push_back({std::abs(fit.huang_rhys - d), 1e-6});
        }
        return checks;
    }

    Checks imperfect_fock() const {
        Checks checks;
        const double fidelity = 0.94;
        const MoleculeParams params = single_mode(1.0);
        const ModeParams& mode = params.modes.front();
        const CorrelationTrace mixed = circuit(params, PhononInit::fock(1), ImperfectionModel{1.0, fidelity});
        double worst = 0.0;
        for (std::size_t k = 0; k < mixed.size(); ++k) {
            const double t = mixed.time(k);
            const std::complex<double> expected =
                fidelity * corr_fock(params, mode, 1, t) + (1.0 - fidelity) * corr_vacuum(params, mode, t);
            worst = std::max(worst, std::abs(mixed.values[k] - expected));
        }
        checks.push_back({worst, 1e-10});

        const TruncatedSpace space = protocol_space(mode, PhononInit::fock(1), ThermalMode::Faithful);
        CavityDensity rho = CavityDensity::Zero(space.dim(), space.dim());
        for (const auto& [weight, state] :
             initial_ensemble(PhononInit::fock(1), space, ThermalMode::Faithful, fidelity)) {
            rho += weight * density_of(state);
        }
        checks.push_back(
            {std::abs(wigner_point(rho, std::complex<double>(0.0), space) - 2.0 / pi * (1.0 - 2.0 * fidelity)), 1e-9});
        return checks;
    }

    Checks multimode_factorization() const {
        MoleculeParams params;
        params.modes = {ModeParams{kOmega0, 0.5}, ModeParams{pi / 60.0, 0.5}};
        const CorrelationTrace oracle = oracle_trace(params, PhononInit::vacuum(), hooks_.grid);
        const CorrelationTrace brute{
            hooks_.grid.dt,
            two_mode_tensor_trace(params.omega_eg, params.modes[0], params.modes[1], hooks_.grid, 12)};
        return {{max_difference(oracle, brute), 1e-8}};
    }

    static Checks wigner_origin() {
        const TruncatedSpace space = heuristic_space(0.0, 1);
        const std::complex<double> origin(0.0);
        return {
            {std::abs(wigner_point(density_of(fock_state(1, space)), origin, space) + 2.0 / pi), 1e-9},
            {std::abs(wigner_point(density_of(fock_state(0, space)), origin, space) - 2.0 / pi), 1e-9},
        };
    }

private:
    VerifyHooks hooks_;
};

template <typename Body>
CriterionResult evaluate(int id, std::string name, Body&& body) {
    CriterionResult result{id, std::move(name), false, 0.0, 0.0, 0.0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
        const Checks checks = body();
        result.passed = !checks.empty();
        double worst_ratio = -1.0;
        for (const Check& check : checks) {
            const bool ok = check.error < check.tolerance;
            result.passed = result.passed && ok;
            const double ratio = std::isfinite(check.error) ? check.error / check.tolerance
                                                            : std::numeric_limits<double>::infinity();
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                result.max_error = check.error;
                result.tolerance = check.tolerance;
            }
        }
    } catch (const std::exception& error) {
        result.passed = false;
        result.max_error = std::numeric_limits<double>::infinity();
        result.detail = error.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace

std::vector<std::complex<double>> two_mode_tensor_trace(double omega_eg, const ModeParams& first,
                                                        const ModeParams& second, const TimeGrid& grid, int dim) {
    const TruncatedSpace space(dim, dim);
    const CavityOperator a = annihilation(space);
    const CavityOperator quanta = number(space);
    auto excited = [&](const ModeParams& mode) {
        const CavityOperator generator = std::complex<double>(0.0, mode.shift()) * (a.adjoint() - a);
        const CavityOperator shift = hermitian_propagator(generator, 1.0);
        return CavityOperator(mode.omega0 * shift * quanta * shift.adjoint());
    };
    const CavityOperator h1 = excited(first);
    const CavityOperator h2 = excited(second);
    // |i, k> sits at index i * dim + k
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < dim; ++k) {
                h(i * dim + k, j * dim + k) += h1(i, j);
                h(k * dim + i, k * dim + j) += h2(i, j);
            }
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const Eigen::VectorXd weights = eig.eigenvectors().row(0).cwiseAbs2().transpose();
    std::vector<std::complex<double>> values(static_cast<std::size_t>(grid.samples()));
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double t = grid.time(static_cast<int>(k));
        std::complex<double> amplitude = 0.0;
        for (Eigen::Index n = 0; n < weights.size(); ++n) {
            amplitude += weights(n) * std::polar(1.0, -eig.eigenvalues()(n) * t);
        }
        values[k] = std::polar(1.0, -omega_eg * t) * amplitude;
    }
    return values;
}

std::vector<CriterionResult> run_acceptance(const VerifyHooks& hooks) {
    const Suite suite(hooks);
    std::vector<CriterionResult> results;
    results.push_back(evaluate(1, "circuit_vs_oracle", [&] { return suite.circuit_vs_oracle(); }));
    results.push_back(evaluate(2, "evolution_operator_identity", [] { return Suite::evolution_identity(); }));
    results.push_back(evaluate(3, "poisson_progression", [&] { return suite.poisson_progression(); }));
    results.push_back(evaluate(4, "vacuum_peak_vs_D", [&] { return suite.vacuum_peak_curve(); }));
    results.push_back(evaluate(5, "fock1_peak_vs_D", [&] { return suite.fock_peak_curve(); }));
    results.push_back(evaluate(6, "thermal_trick_equivalence", [&] { return suite.thermal_trick(); }));
    results.push_back(evaluate(7, "damping_factorization", [&] { return suite.damping_factorization(); }));
    results.push_back(evaluate(8, "sum_rule", [&] { return suite.sum_rule(); }));
    results.push_back(evaluate(9, "contrast_linearity", [&] { return suite.contrast_linearity(); }));
    results.push_back(evaluate(10, "imperfect_fock_mixture", [&] { return suite.imperfect_fock(); }));
    results.push_back(evaluate(11, "multimode_factorization", [&] { return suite.multimode_factorization(); }));
    results.push_back(evaluate(12, "wigner_origin", [] { return Suite::wigner_origin(); }));
    return results;
}

std::string format_result(const CriterionResult& result) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %2d %-28s max_error=%.3e tol=%.0e (%.2f s)", result.passed ? "PASS" : "FAIL",
                  result.id, result.name.c_str(), result.max_error, result.tolerance, result.seconds);
    std::string out(line);
    if (!result.detail.empty()) {
        out += "  " + result.detail;
    }
    return out;
}

} // namespace molspec
