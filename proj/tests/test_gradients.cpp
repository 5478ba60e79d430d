#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plateaulab/gradients.hpp"
#include "plateaulab/models.hpp"
#include "test_util.hpp"

using namespace plateaulab;
using testutil::max_abs;
using testutil::max_abs_diff;

TEST_CASE("finite_diff_gradient") {
    SUBCASE("exact on quadratics") {
        const auto f = [](const std::vector<double>& x) {
            return x[0] * x[0] + 3.0 * x[1] * x[1] - 2.0 * x[0];
        };
        const auto g = finite_diff_gradient(f, {1.5, -0.5}, 1e-3);
        CHECK(g[0] == doctest::Approx(2.0 * 1.5 - 2.0).epsilon(1e-9));
        CHECK(g[1] == doctest::Approx(-3.0).epsilon(1e-9));
    }
    SUBCASE("second-order accuracy on sin") {
        const auto f = [](const std::vector<double>& x) { return std::sin(x[0]); };
        const double coarse = std::abs(finite_diff_gradient(f, {0.7}, 1e-2)[0] - std::cos(0.7));
        const double fine = std::abs(finite_diff_gradient(f, {0.7}, 1e-3)[0] - std::cos(0.7));
        CHECK(coarse < 1e-4);
        CHECK(fine < coarse / 50.0);
    }
    SUBCASE("single-qubit rotation: d<Z>/dtheta = -2 sin 2theta") {
        const auto terms = enumerate_two_local_terms(1);
        const auto f = [&](const std::vector<double>& theta) {
            const StateVector psi = unitary_qnn_state(terms, theta, 2);
            return visible_expectation(pauli(2), pure_density(psi), BipartiteDims(1, 0));
        };
        const auto g = finite_diff_gradient(f, {M_PI / 4.0, 0.0, 0.0}, 1e-4);
        CHECK(std::abs(g[0] - (-2.0)) < 1e-6);
    }
    SUBCASE("invalid step throws") {
        const auto f = [](const std::vector<double>&) { return 0.0; };
        CHECK_THROWS_AS(finite_diff_gradient(f, {0.0}, 0.0), Error);
        CHECK_THROWS_AS(finite_diff_gradient(f, {0.0}, -1e-4), Error);
    }
    SUBCASE("non-finite objective throws") {
        const auto f = [](const std::vector<double>& x) { return std::log(x[0]); };
        CHECK_THROWS_AS(finite_diff_gradient(f, {0.0}, 0.5), NumericError);
    }
}

TEST_CASE("exact_thermal_derivative analytic cases") {
    const BipartiteDims dims(1, 0);
    SUBCASE("fully degenerate: H = 0, direction X, observable X") {
        // rho(t) = (cosh t I - sinh t X) / (2 cosh t), <X> = -tanh t.
        CHECK(exact_thermal_derivative(ComplexMatrix(2), pauli(0), pauli(0), dims) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("commuting diagonal: H = 0, direction Z, observable Z") {
        CHECK(exact_thermal_derivative(ComplexMatrix(2), pauli(2), pauli(2), dims) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("shifted diagonal keeps the closed form") {
        // H = c I changes nothing: <Z>(t) = -tanh t still.
        ComplexMatrix h = ComplexMatrix::identity(2);
        h *= 3.0;
        CHECK(exact_thermal_derivative(h, pauli(2), pauli(2), dims) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact_thermal_derivative matches finite differences") {
    Rng rng(51);
    const BipartiteDims dims(1, 1);
    const auto terms = enumerate_two_local_terms(2);
    const auto ham = sample_two_local(2, CoeffDistribution::make_normal(0.0, 0.01),
                                      CoeffDistribution::make_normal(0.0, 1.0), rng);
    ComplexMatrix h = assemble_hamiltonian(ham, terms);
    h *= 1.0 / operator_norm(h);
    const ComplexMatrix obs = pauli(2);

    for (int k : {0, 4, 9, 14}) {
        const ComplexMatrix& hk = terms[k];
        const auto f = [&](const std::vector<double>& t) {
            ComplexMatrix hp = hk;
            hp *= t[0];
            hp += h;
            return visible_expectation(obs, thermal_state(hp), dims);
        };
        const double numeric = finite_diff_gradient(f, {0.0}, 1e-5)[0];
        const double exact = exact_thermal_derivative(h, hk, obs, dims);
        CHECK(exact == doctest::Approx(numeric).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("exact_thermal_derivative input guards") {
    const BipartiteDims dims(1, 0);
    ComplexMatrix skew(2);
    skew(0, 1) = 1.0;  // not Hermitian
    CHECK_THROWS_AS(exact_thermal_derivative(ComplexMatrix(2), skew, pauli(2), dims),
                    HermiticityError);
    CHECK_THROWS_AS(exact_thermal_derivative(ComplexMatrix(2), pauli(0), pauli(0), BipartiteDims(1, 1)),
                    DimensionError);
    CHECK_THROWS_AS(
        exact_thermal_derivative(ComplexMatrix(4), pauli(0), pauli(0), BipartiteDims(1, 0)),
        DimensionError);
}

TEST_CASE("first_order_eigvec_shift") {
    SUBCASE("two-level closed form") {
        ComplexMatrix h(2);
        h(1, 1) = 1.0;
        const Spectrum s = hermitian_eig(h);
        const StateVector shift = first_order_eigvec_shift(s, pauli(0), 0);
        CHECK(std::abs(shift[0]) < 1e-14);
        CHECK(std::abs(shift[1] - Complex(-1.0)) < 1e-14);
    }
    SUBCASE("orthogonal to the unperturbed eigenvector") {
        Rng rng(52);
        const ComplexMatrix h = gue_hamiltonian(6, rng);
        const ComplexMatrix hk = gue_hamiltonian(6, rng);
        const Spectrum s = hermitian_eig(h);
        for (int n : {0, 3, 5}) {
            const StateVector shift = first_order_eigvec_shift(s, hk, n);
            Complex overlap = 0.0;
            for (int i = 0; i < 6; ++i) overlap += std::conj(s.eigenvectors(i, n)) * shift[i];
            CHECK(std::abs(overlap) < 1e-11);
        }
    }
    SUBCASE("predicts the perturbed eigenvector to first order") {
        Rng rng(53);
        const ComplexMatrix h = gue_hamiltonian(4, rng);
        const ComplexMatrix hk = gue_hamiltonian(4, rng);
        const Spectrum s = hermitian_eig(h);
        const double eps = 1e-4;

        ComplexMatrix hp = hk;
        hp *= eps;
        hp += h;
        const Spectrum sp = hermitian_eig(hp);

        for (int n = 0; n < 4; ++n) {
            const StateVector shift = first_order_eigvec_shift(s, hk, n);
            // Align the global phase of the perturbed vector with the
            // unperturbed one before comparing.
            Complex overlap = 0.0;
            for (int i = 0; i < 4; ++i) overlap += std::conj(sp.eigenvectors(i, n)) * s.eigenvectors(i, n);
            const Complex phase = overlap / std::abs(overlap);
            double residual = 0.0;
            for (int i = 0; i < 4; ++i) {
                const Complex predicted = s.eigenvectors(i, n) + eps * shift[i];
                residual = std::max(residual, std::abs(phase * sp.eigenvectors(i, n) - predicted));
            }
            CHECK(residual < 50.0 * eps * eps);
        }
    }
    SUBCASE("degenerate spectrum throws") {
        const Spectrum s = hermitian_eig(ComplexMatrix::identity(2));
        CHECK_THROWS_AS(first_order_eigvec_shift(s, pauli(0), 0), DegeneracyError);
    }
    SUBCASE("index out of range throws") {
        ComplexMatrix h(2);
        h(1, 1) = 1.0;
        const Spectrum s = hermitian_eig(h);
        CHECK_THROWS_AS(first_order_eigvec_shift(s, pauli(0), 2), DimensionError);
    }
}

TEST_CASE("gap_statistic") {
    SUBCASE("hand-computed three-level value") {
        ComplexMatrix h(3);
        h(1, 1) = 1.0;
        h(2, 2) = 3.0;
        // k=0: (1/1 + 1/3)/3 = 4/9, the largest of the three sums.
        CHECK(gap_statistic(hermitian_eig(h)) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    }
    SUBCASE("degenerate spectrum throws") {
        CHECK_THROWS_AS(gap_statistic(hermitian_eig(ComplexMatrix::identity(3))), DegeneracyError);
    }
    SUBCASE("near-degenerate gap below threshold throws") {
        ComplexMatrix h(2);
        h(1, 1) = 5e-11;
        CHECK_THROWS_AS(gap_statistic(hermitian_eig(h)), DegeneracyError);
    }
}

TEST_CASE("inf_norm") {
    CHECK(inf_norm(std::vector<double>{1.0, -3.0, 2.0}) == 3.0);
    CHECK(inf_norm(std::vector<double>{}) == 0.0);
}
