#ifndef MOLSPEC_MODEL_HPP
#define MOLSPEC_MODEL_HPP

// Plain data shared by the simulation layers: molecule parameters, the
// phonon initial state, the time grid and the sampled correlation trace.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

namespace molspec {

/// One displaced vibronic mode. `huang_rhys` is D = d^2.
struct ModeParams {
    double omega0 = std::numbers::pi / 90.0;
    double huang_rhys = 1.0;

    double shift() const { return std::sqrt(huang_rhys); }
    void validate() const;
    friend bool operator==(const ModeParams&, const ModeParams&) = default;
};

struct MoleculeParams {
    double omega_eg = std::numbers::pi / 5.0;
    std::vector<ModeParams> modes{ModeParams{}};

    void validate() const;
    friend bool operator==(const MoleculeParams&, const MoleculeParams&) = default;
};

struct Vacuum {
    friend bool operator==(const Vacuum&, const Vacuum&) = default;
};

struct Fock {
    int n = 0;
    friend bool operator==(const Fock&, const Fock&) = default;
};

struct Thermal {
    double nbar = 0.0;
    friend bool operator==(const Thermal&, const Thermal&) = default;
};

using PhononState = std::variant<Vacuum, Fock, Thermal>;

/// Initial nuclear state plus the optional damping time tau (absent = undamped).
struct PhononInit {
    PhononState state = Vacuum{};
    std::optional<double> damping_tau;

    static PhononInit vacuum() { return {Vacuum{}, std::nullopt}; }
    static PhononInit fock(int n) { return {Fock{n}, std::nullopt}; }
    static PhononInit thermal(double nbar) { return {Thermal{nbar}, std::nullopt}; }

    PhononInit damped(double tau) const {
        PhononInit copy = *this;
        copy.damping_tau = tau;
        return copy;
    }
    PhononInit undamped() const { return {state, std::nullopt}; }

    void validate() const;
    friend bool operator==(const PhononInit&, const PhononInit&) = default;
};

/// Uniform sampling t_k = k dt, k = 0 .. t_max/dt - 1 (t_max exclusive).
struct TimeGrid {
    double dt = 1.0;
    double t_max = 900.0;

    int samples() const;
    double time(int k) const { return k * dt; }
    void validate() const;
    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Phenomenological hardware model: coherences scaled by `contrast_f`,
/// Fock preparation mixed with vacuum at fidelity `prep_fidelity_F`.
struct ImperfectionModel {
    double contrast_f = 1.0;
    double prep_fidelity_F = 1.0;

    void validate() const;
    friend bool operator==(const ImperfectionModel&, const ImperfectionModel&) = default;
};

struct CorrelationTrace {
    double dt = 1.0;
    std::vector<std::complex<double>> values;

    std::size_t size() const { return values.size(); }
    double time(std::size_t k) const { return static_cast<double>(k) * dt; }
};

} // namespace molspec

#endif // MOLSPEC_MODEL_HPP
