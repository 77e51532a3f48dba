#include "molspec/fock.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace molspec;
using namespace std::complex_literals;

namespace {

double max_abs(const CavityOperator& m) { return m.cwiseAbs().maxCoeff(); }

double safe_block_error(const CavityOperator& m, const TruncatedSpace& space) {
    const int s = space.safe_dim();
    return max_abs(m.topLeftCorner(s, s) - CavityOperator::Identity(s, s));
}

} // namespace

TEST(truncated_space, rejects_inconsistent_sizes) {
    EXPECT_THROW(TruncatedSpace(0, 0), ValidationError);
    EXPECT_THROW(TruncatedSpace(10, 11), ValidationError);
    EXPECT_THROW(TruncatedSpace(10, 0), ValidationError);
    EXPECT_NO_THROW(TruncatedSpace(10, 10));
}

TEST(truncated_space, heuristic_floor_and_growth) {
    const TruncatedSpace small = heuristic_space(0.0, 0);
    EXPECT_EQ(small.dim(), TruncatedSpace::kMinDim);
    EXPECT_GE(small.safe_dim(), 1);

    int previous = 0;
    for (double d : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const TruncatedSpace space = heuristic_space(d, 0);
        EXPECT_GE(space.dim(), previous);
        EXPECT_TRUE(space.holds_displacement(2.0 * std::sqrt(d)));
        previous = space.dim();
    }
    EXPECT_EQ(heuristic_space(4.0, 0).dim(), 60);
    EXPECT_GE(heuristic_space(1.0, 40).safe_dim(), 41);
}

TEST(truncated_space, override_too_small_is_a_truncation_error) {
    EXPECT_THROW(heuristic_space(4.0, 0, 20), TruncationError);
    EXPECT_EQ(heuristic_space(1.0, 0, 80).dim(), 80);
}

TEST(fock_state, basis_vectors) {
    const TruncatedSpace space(8, 8);
    const CavityState vacuum = fock_state(0, space);
    EXPECT_EQ(vacuum(0), 1.0);
    EXPECT_DOUBLE_EQ(vacuum.norm(), 1.0);
    const CavityState one = fock_state(1, space);
    EXPECT_EQ(one(1), 1.0);
    EXPECT_EQ(one(0), 0.0);
    EXPECT_THROW(fock_state(8, space), std::out_of_range);
    EXPECT_THROW(fock_state(-1, space), std::out_of_range);
    EXPECT_THROW(fock_state(5, TruncatedSpace(8, 5)), std::out_of_range);
}

TEST(coherent_state, zero_amplitude_is_vacuum) {
    const TruncatedSpace space(32, 32);
    EXPECT_LT((coherent_state(std::complex<double>(0.0), space) - fock_state(0, space)).norm(), 1e-15);
}

TEST(coherent_state, poisson_populations) {
    const TruncatedSpace space(32, 32);
    const CavityState psi = coherent_state(std::complex<double>(1.0), space);
    EXPECT_NEAR(std::norm(psi(0)), 0.36787944117144233, 1e-12);
    EXPECT_NEAR(std::norm(psi(1)), 0.36787944117144233, 1e-12);
    EXPECT_NEAR(std::norm(psi(2)), 0.18393972058572117, 1e-12);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(coherent_state, matches_displaced_vacuum) {
    const TruncatedSpace space = TruncatedSpace::for_displacement(1.0, 20);
    const CavityState direct = coherent_state(std::complex<double>(1.0), space);
    const CavityState displaced = displacement_operator(std::complex<double>(1.0), space) * fock_state(0, space);
    EXPECT_LT((direct - displaced).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(coherent_state, tail_containment) {
    EXPECT_THROW(coherent_state(std::complex<double>(3.0), TruncatedSpace(32, 30)), TruncationError);
}

TEST(thermal_density, zero_temperature_is_vacuum) {
    const TruncatedSpace space(16, 16);
    const CavityDensity rho = thermal_density(0.0, space);
    EXPECT_EQ(rho(0, 0), 1.0);
    EXPECT_EQ(rho.trace(), 1.0);
}

TEST(thermal_density, geometric_populations) {
    const TruncatedSpace space(64, 60);
    const CavityDensity rho = thermal_density(1.0, space);
    EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(rho(1, 1).real(), 0.25, 1e-12);
    EXPECT_NEAR(rho(2, 2).real(), 0.125, 1e-12);
    EXPECT_NEAR(std::abs((number(space) * rho).trace() - 1.0), 0.0, 1e-10);
    EXPECT_TRUE(is_valid_density(rho));
}

TEST(thermal_density, tail_condition) {
    EXPECT_THROW(thermal_density(1.0, TruncatedSpace(32, 24)), TruncationError);
    EXPECT_THROW(thermal_density(-0.5, TruncatedSpace(32, 24)), ValidationError);
}

TEST(ladder, actions_and_commutator) {
    const TruncatedSpace space(20, 20);
    const CavityOperator a = annihilation(space);
    const CavityOperator ad = creation(space);
    EXPECT_LT((a * fock_state(1, space) - fock_state(0, space)).norm(), 1e-15);
    EXPECT_LT((a * fock_state(0, space)).norm(), 1e-15);
    EXPECT_LT((ad * a - number(space)).cwiseAbs().maxCoeff(), 1e-14);
    // the truncation edge breaks [a, a^dag] = I only in the last level
    const CavityOperator commutator = a * ad - ad * a;
    EXPECT_LT(max_abs(commutator.topLeftCorner(19, 19) - CavityOperator::Identity(19, 19)), 1e-12);
}

TEST(displacement, zero_is_identity) {
    const TruncatedSpace space(32, 10);
    EXPECT_EQ(max_abs(displacement_operator(std::complex<double>(0.0), space) - CavityOperator::Identity(32, 32)), 0.0);
}

TEST(displacement, vacuum_element) {
    const TruncatedSpace space = TruncatedSpace::for_displacement(2.0, 4);
    for (std::complex<double> alpha : {0.3 + 0.1i, -1.2 + 0.7i, 2.0 + 0.0i}) {
        EXPECT_NEAR(std::abs(displacement_operator(alpha, space)(0, 0) - std::exp(-std::norm(alpha) / 2)), 0.0, 1e-15);
    }
}

TEST(displacement, matches_textbook_laguerre_elements) {
    const std::complex<double> alpha(0.8, -1.1);
    const TruncatedSpace space = TruncatedSpace::for_displacement(std::abs(alpha), 10);
    const CavityOperator d = displacement_operator(alpha, space);
    for (int m = 0; m < 10; ++m) {
        for (int n = 0; n < 10; ++n) {
            EXPECT_NEAR(std::abs(d(m, n) - oracle::displacement_element(alpha, m, n)), 0.0, 1e-12)
                << "m=" << m << " n=" << n;
        }
    }
}

TEST(displacement, matches_truncated_generator_exponential) {
    // exp of the truncated generator is only faithful far below its cutoff
    const std::complex<double> alpha(1.5, 0.5);
    const TruncatedSpace space = TruncatedSpace::for_displacement(std::abs(alpha), 8);
    const CavityOperator closed = displacement_operator(alpha, space);
    const CavityOperator brute = oracle::displacement_by_expm(alpha, 120);
    const int s = space.safe_dim();
    EXPECT_LT(max_abs(closed.topLeftCorner(s, s) - brute.topLeftCorner(s, s)), 1e-12);
}

TEST(displacement, inverse_on_safe_subspace) {
    const std::complex<double> alpha(1.0, 0.0);
    const TruncatedSpace space = TruncatedSpace::for_displacement(1.0, 6);
    const CavityOperator product = displacement_operator(alpha, space) * displacement_operator(-alpha, space);
    EXPECT_LT(safe_block_error(product, space), 1e-10);
}

TEST(displacement, unitary_on_safe_subspace_random) {
    std::mt19937_64 rng(7);
    for (double radius : {0.5, 1.0, 2.0, 4.0}) {
        const TruncatedSpace space = TruncatedSpace::for_displacement(radius, 6);
        for (int trial = 0; trial < 10; ++trial) {
            const std::complex<double> alpha = oracle::random_in_disc(rng, radius);
            const CavityOperator d = displacement_operator(alpha, space);
            EXPECT_LT(safe_block_error(d.adjoint() * d, space), 1e-10) << "alpha=" << alpha;
        }
    }
}

TEST(displacement, composition_law) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::complex<double> alpha = oracle::random_in_disc(rng, 1.5);
        const std::complex<double> beta = oracle::random_in_disc(rng, 1.5);
        const TruncatedSpace space = TruncatedSpace::for_displacement(3.0, 6);
        const CavityOperator lhs = displacement_operator(alpha, space) * displacement_operator(beta, space);
        const CavityOperator rhs = std::polar(1.0, std::imag(alpha * std::conj(beta))) *
                                   displacement_operator(alpha + beta, space);
        const int s = space.safe_dim();
        EXPECT_LT(max_abs(lhs.topLeftCorner(s, s) - rhs.topLeftCorner(s, s)), 1e-9);
    }
}

TEST(displacement, coherent_population_law) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const std::complex<double> alpha = oracle::random_in_disc(rng, 3.0);
        const TruncatedSpace space = TruncatedSpace::for_displacement(3.0, 1);
        const CavityOperator d = displacement_operator(alpha, space);
        const double x = std::norm(alpha);
        for (int n = 0; n < space.dim() - 10; ++n) {
            const double expected = std::exp(-x + n * std::log(std::max(x, 1e-300)) - std::lgamma(n + 1.0));
            EXPECT_NEAR(std::norm(d(n, 0)), n == 0 ? std::exp(-x) : expected, 1e-10);
        }
    }
}

TEST(displacement, large_amplitude_is_a_truncation_error) {
    EXPECT_THROW(displacement_operator(std::complex<double>(5.0), TruncatedSpace(32, 4)), TruncationError);
}

TEST(displacement, long_double_instantiation_agrees) {
    const TruncatedSpace space = TruncatedSpace::for_displacement(2.0, 4);
    const auto wide = displacement_operator<long double>(std::complex<long double>(1.2L, -0.4L), space);
    const auto narrow = displacement_operator(std::complex<double>(1.2, -0.4), space);
    EXPECT_LT(max_abs(wide.cast<std::complex<double>>() - narrow), 1e-13);
}

TEST(parity, basis_and_thermal) {
    const TruncatedSpace space(64, 60);
    EXPECT_DOUBLE_EQ(parity_expectation(density_of(fock_state(0, space))), 1.0);
    EXPECT_DOUBLE_EQ(parity_expectation(density_of(fock_state(1, space))), -1.0);
    // sum_n (-1)^n 2^{-(n+1)} = 1/3
    EXPECT_NEAR(parity_expectation(thermal_density(1.0, space)), 1.0 / 3.0, 1e-12);
}

TEST(wigner, origin_values) {
    const TruncatedSpace space(32, 10);
    const std::complex<double> origin(0.0);
    EXPECT_NEAR(wigner_point(density_of(fock_state(1, space)), origin, space), -2.0 / std::numbers::pi, 1e-12);
    EXPECT_NEAR(wigner_point(density_of(fock_state(0, space)), origin, space), 2.0 / std::numbers::pi, 1e-12);
    const CavityDensity mixed =
        0.94 * density_of(fock_state(1, space)) + 0.06 * density_of(fock_state(0, space));
    EXPECT_NEAR(wigner_point(mixed, origin, space), -0.5602253996834715, 1e-9);
}

TEST(wigner, coherent_state_gaussian) {
    // W of |beta0> is (2/pi) exp(-2 |beta - beta0|^2)
    const TruncatedSpace space = TruncatedSpace::for_displacement(3.0, 1);
    const std::complex<double> center(0.7, -0.4);
    const CavityDensity rho = density_of(displacement_operator(center, space) * fock_state(0, space));
    for (std::complex<double> beta : {0.0 + 0.0i, 0.7 - 0.4i, 1.0 + 0.5i}) {
        EXPECT_NEAR(wigner_point(rho, beta, space),
                    2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(beta - center)), 1e-10);
    }
}

TEST(wigner, linear_in_density) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const TruncatedSpace space = TruncatedSpace::for_displacement(1.0, 8);
    for (int trial = 0; trial < 10; ++trial) {
        const CavityDensity r1 = density_of(oracle::random_state(rng, space.dim(), 6));
        const CavityDensity r2 = density_of(oracle::random_state(rng, space.dim(), 6));
        const double w = unit(rng);
        const std::complex<double> beta = oracle::random_in_disc(rng, 1.0);
        const double mixed = wigner_point(CavityDensity(w * r1 + (1 - w) * r2), beta, space);
        const double combined = w * wigner_point(r1, beta, space) + (1 - w) * wigner_point(r2, beta, space);
        EXPECT_NEAR(mixed, combined, 1e-12);
    }
}

TEST(density, constructors_are_valid) {
    const TruncatedSpace space(80, 70);
    EXPECT_TRUE(is_valid_density(thermal_density(0.0, space)));
    EXPECT_TRUE(is_valid_density(thermal_density(2.0, space)));
    EXPECT_TRUE(is_valid_density(density_of(coherent_state(std::complex<double>(1.0, 1.0), space))));
    EXPECT_FALSE(is_valid_density(CavityDensity(2.0 * thermal_density(0.5, space))));
}
