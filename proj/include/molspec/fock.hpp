#ifndef MOLSPEC_FOCK_HPP
#define MOLSPEC_FOCK_HPP

// Dense numerics on a truncated bosonic Fock space |0>, ..., |dim-1>.
//
// Everything here is a template over the real scalar type so the same code
// serves double production runs and long double cross-checks. The aliases
// at the bottom fix Real = double for the rest of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "molspec/errors.hpp"

namespace molspec {

template <typename Real>
using StateVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using OperatorMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Highest Fock level touched (with margin) when D(alpha) acts on |level>.
/// The displaced Fock state is concentrated below (sqrt(n) + |alpha|)^2; the
/// linear term and constant cover its super-exponentially decaying tail.
inline double displacement_reach(double amplitude, int level) {
    const double edge = std::sqrt(static_cast<double>(std::max(level, 0))) + std::abs(amplitude);
    return edge * edge + 8.0 * edge + 12.0;
}

/// Fock cutoff `dim` together with the number of low levels (`safe_dim`) on
/// which operator identities are certified.
class TruncatedSpace {
public:
    static constexpr int kMinDim = 32;

    TruncatedSpace(int dim, int safe_dim) : dim_(dim), safe_dim_(safe_dim) {
        if (dim <= 0) {
            throw ValidationError("dim", "must be positive, got " + std::to_string(dim));
        }
        if (safe_dim <= 0 || safe_dim > dim) {
            throw ValidationError("safe_dim", "must lie in (0, dim], got " + std::to_string(safe_dim));
        }
    }

    /// Space in which D(alpha), |alpha| <= max_amplitude, acts faithfully on
    /// the first `certified_levels` Fock states. With `dim_override` the cutoff
    /// is fixed and only the certified block is derived from it.
    static TruncatedSpace for_displacement(double max_amplitude, int certified_levels,
                                           std::optional<int> dim_override = std::nullopt) {
        if (certified_levels <= 0) {
            throw ValidationError("certified_levels", "must be positive");
        }
        const int dim = dim_override.value_or(std::max(
            kMinDim,
            static_cast<int>(std::ceil(displacement_reach(max_amplitude, certified_levels - 1) - 1e-9))));
        if (dim <= 0) {
            throw ValidationError("dim", "must be positive, got " + std::to_string(dim));
        }
        const int safe = certified_block(max_amplitude, dim);
        if (safe < certified_levels) {
            throw TruncationError("Fock cutoff " + std::to_string(dim) + " cannot certify " +
                                      std::to_string(certified_levels) +
                                      " levels under displacements up to |alpha| = " +
                                      std::to_string(max_amplitude),
                                  max_amplitude, dim);
        }
        return TruncatedSpace(dim, safe);
    }

    int dim() const noexcept { return dim_; }
    int safe_dim() const noexcept { return safe_dim_; }

    /// True when D(alpha) with this |alpha| maps every certified level inside the cutoff.
    bool holds_displacement(double amplitude) const noexcept {
        return displacement_reach(amplitude, safe_dim_ - 1) <= dim_ + 1e-9;
    }

    friend bool operator==(const TruncatedSpace&, const TruncatedSpace&) = default;

private:
    static int certified_block(double amplitude, int dim) {
        int safe = 0;
        while (safe < dim && displacement_reach(amplitude, safe) <= dim + 1e-9) {
            ++safe;
        }
        return safe;
    }

    int dim_;
    int safe_dim_;
};

/// Space sized for the displaced-oscillator protocol: the largest
/// displacement it generates is 2 sqrt(D), and the initial state occupies
/// levels up to `max_initial_level`.
inline TruncatedSpace heuristic_space(double huang_rhys, int max_initial_level,
                                      std::optional<int> dim_override = std::nullopt) {
    return TruncatedSpace::for_displacement(2.0 * std::sqrt(huang_rhys), max_initial_level + 1,
                                            dim_override);
}

template <typename Real = double>
StateVector<Real> fock_state(int n, const TruncatedSpace& space) {
    if (n < 0 || n >= space.safe_dim()) {
        throw std::out_of_range("Fock level " + std::to_string(n) + " outside certified levels [0, " +
                                std::to_string(space.safe_dim()) + ")");
    }
    StateVector<Real> psi = StateVector<Real>::Zero(space.dim());
    psi(n) = Real(1);
    return psi;
}

/// |alpha> = e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n>, renormalized on the cutoff.
template <typename Real = double>
StateVector<Real> coherent_state(std::complex<Real> alpha, const TruncatedSpace& space) {
    const Real r = std::abs(alpha);
    if (r * r + 6 * r + 10 > space.safe_dim()) {
        throw TruncationError("coherent state |alpha| = " + std::to_string(static_cast<double>(r)) +
                                  " does not fit in " + std::to_string(space.safe_dim()) +
                                  " certified levels",
                              static_cast<double>(r), space.dim());
    }
    StateVector<Real> psi(space.dim());
    psi(0) = std::exp(-r * r / 2);
    for (int n = 1; n < space.dim(); ++n) {
        psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<Real>(n));
    }
    psi.normalize();
    return psi;
}

/// Geometric Bose-Einstein populations on the certified levels.
template <typename Real = double>
OperatorMatrix<Real> thermal_density(Real nbar, const TruncatedSpace& space) {
    if (!(nbar >= 0)) {
        throw ValidationError("nbar", "thermal occupation must be >= 0");
    }
    const Real ratio = nbar / (nbar + 1);
    if (std::pow(ratio, static_cast<Real>(space.safe_dim())) >= Real(1e-12)) {
        throw TruncationError("thermal tail beyond " + std::to_string(space.safe_dim()) +
                                  " levels exceeds 1e-12 for nbar = " +
                                  std::to_string(static_cast<double>(nbar)),
                              0.0, space.dim());
    }
    Eigen::Matrix<Real, Eigen::Dynamic, 1> p = Eigen::Matrix<Real, Eigen::Dynamic, 1>::Zero(space.dim());
    Real weight = 1 / (nbar + 1);
    for (int n = 0; n < space.safe_dim(); ++n) {
        p(n) = weight;
        weight *= ratio;
    }
    p /= p.sum();
    return p.template cast<std::complex<Real>>().asDiagonal();
}

template <typename Real = double>
OperatorMatrix<Real> annihilation(const TruncatedSpace& space) {
    OperatorMatrix<Real> a = OperatorMatrix<Real>::Zero(space.dim(), space.dim());
    for (int n = 1; n < space.dim(); ++n) {
        a(n - 1, n) = std::sqrt(static_cast<Real>(n));
    }
    return a;
}

template <typename Real = double>
OperatorMatrix<Real> creation(const TruncatedSpace& space) {
    return annihilation<Real>(space).adjoint();
}

template <typename Real = double>
OperatorMatrix<Real> number(const TruncatedSpace& space) {
    OperatorMatrix<Real> n = OperatorMatrix<Real>::Zero(space.dim(), space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        n(k, k) = static_cast<Real>(k);
    }
    return n;
}

/// D(alpha) = exp(alpha a^dag - alpha^* a) from its closed-form matrix elements
///
///   <j+k|D|j> = e^{-x/2} alpha^k / sqrt(k!) * t_j,   <j|D|j+k> = e^{-x/2} (-alpha^*)^k / sqrt(k!) * t_j
///
/// with x = |alpha|^2 and t_j = sqrt(k! j! / (j+k)!) L_j^{(k)}(x), generated
/// along each diagonal by the normalized Laguerre three-term recurrence.
template <typename Real = double>
OperatorMatrix<Real> displacement_operator(std::complex<Real> alpha, const TruncatedSpace& space) {
    if (alpha == std::complex<Real>(0)) {
        return OperatorMatrix<Real>::Identity(space.dim(), space.dim());
    }
    const Real r = std::abs(alpha);
    if (!space.holds_displacement(static_cast<double>(r))) {
        throw TruncationError("displacement |alpha| = " + std::to_string(static_cast<double>(r)) +
                                  " leaks out of the Fock cutoff " + std::to_string(space.dim()),
                              static_cast<double>(r), space.dim());
    }
    const int dim = space.dim();
    const Real x = r * r;
    OperatorMatrix<Real> d = OperatorMatrix<Real>::Zero(dim, dim);

    std::complex<Real> lower = std::exp(-x / 2);  // e^{-x/2} alpha^k / sqrt(k!)
    std::complex<Real> upper = lower;              // e^{-x/2} (-alpha^*)^k / sqrt(k!)
    Eigen::Matrix<Real, Eigen::Dynamic, 1> t(dim);
    for (int k = 0; k < dim; ++k) {
        if (k > 0) {
            const Real s = std::sqrt(static_cast<Real>(k));
            lower *= alpha / s;
            upper *= -std::conj(alpha) / s;
        }
        const int len = dim - k;
        t(0) = 1;
        if (len > 1) {
            t(1) = (1 + k - x) / std::sqrt(static_cast<Real>(k + 1));
        }
        for (int j = 1; j + 1 < len; ++j) {
            const Real jr = j;
            t(j + 1) = ((2 * jr + 1 + k - x) * t(j) - std::sqrt(jr * (jr + k)) * t(j - 1)) /
                       std::sqrt((jr + 1) * (jr + 1 + k));
        }
        for (int j = 0; j < len; ++j) {
            d(j + k, j) = lower * t(j);
            if (k > 0) {
                d(j, j + k) = upper * t(j);
            }
        }
    }
    return d;
}

/// Pure-state density |psi><psi|.
template <typename Derived>
OperatorMatrix<typename Derived::Scalar::value_type> density_of(const Eigen::MatrixBase<Derived>& psi) {
    return psi * psi.adjoint();
}

template <typename Real = double>
Real parity_expectation(const OperatorMatrix<Real>& rho) {
    Real total = 0;
    for (Eigen::Index n = 0; n < rho.rows(); ++n) {
        total += (n % 2 == 0 ? 1 : -1) * rho(n, n).real();
    }
    return total;
}

/// W(beta) = (2/pi) <parity> of D(-beta) rho D(beta).
template <typename Real = double>
Real wigner_point(const OperatorMatrix<Real>& rho, std::complex<Real> beta, const TruncatedSpace& space) {
    if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
        throw ValidationError("rho", "density shape does not match the Fock cutoff");
    }
    const OperatorMatrix<Real> shift = displacement_operator<Real>(-beta, space);
    const OperatorMatrix<Real> moved = shift * rho * shift.adjoint();
    return 2 / std::numbers::pi_v<Real> * parity_expectation<Real>(moved);
}

/// Hermitian, unit trace, and no eigenvalue below -eig_tol.
template <typename Real = double>
bool is_valid_density(const OperatorMatrix<Real>& rho, Real tol = Real(1e-12), Real eig_tol = Real(1e-10)) {
    if (rho.rows() != rho.cols()) {
        return false;
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(rho.trace() - std::complex<Real>(1)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<OperatorMatrix<Real>> eig(rho, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -eig_tol;
}

using CavityState = StateVector<double>;
using CavityDensity = OperatorMatrix<double>;
using CavityOperator = OperatorMatrix<double>;

} // namespace molspec

#endif // MOLSPEC_FOCK_HPP
