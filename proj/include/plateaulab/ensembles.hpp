#pragma once

#include <span>
#include <string>
#include <vector>

#include "plateaulab/complex_matrix.hpp"
#include "plateaulab/rng.hpp"

namespace plateaulab {

/// Scalar coefficient law for Hamiltonian and parameter draws.
/// Zero-width laws (variance 0, or lo == hi) are allowed and yield constants.
struct CoeffDistribution {
    enum class Kind { normal, uniform };

    Kind kind = Kind::normal;
    double mean = 0.0;
    double variance = 1.0;
    double lo = 0.0;
    double hi = 1.0;

    static CoeffDistribution make_normal(double mean, double variance);
    static CoeffDistribution make_uniform(double lo, double hi);

    double sample(Rng& rng) const;
    void validate() const;

    bool operator==(const CoeffDistribution&) const = default;
};

/// Two-local Hamiltonian on n qubits: coefficients for every onsite Pauli
/// sigma_a^i and every offsite product sigma_a^i sigma_b^j (i < j), stored
/// flat in enumeration order (onsite block first, then offsite block).
struct TwoLocalHamiltonian {
    int n = 1;
    std::vector<double> coefficients;

    static int onsite_count(int n) { return 3 * n; }
    static int offsite_count(int n) { return 9 * n * (n - 1) / 2; }
    static int term_count(int n) { return onsite_count(n) + offsite_count(n); }

    void validate() const;
};

/// Single-qubit Pauli matrix; axis 0, 1, 2 = x, y, z.
ComplexMatrix pauli(int axis);

/// All two-local Pauli-string matrices on n qubits, dimension 2^n, in the
/// fixed enumeration order: onsite terms with site ascending and axis in
/// (x, y, z), then offsite terms with (i, j) pairs lexicographic (i < j)
/// and axes (a, b) in row-major (x, y, z) order. Qubit 0 is the most
/// significant factor of the register index.
std::vector<ComplexMatrix> enumerate_two_local_terms(int n);

/// Draw coefficients for every term; onsite block from `onsite`, offsite
/// block from `offsite`, in enumeration order.
TwoLocalHamiltonian sample_two_local(int n, const CoeffDistribution& onsite,
                                     const CoeffDistribution& offsite, Rng& rng);

/// Dense Hermitian matrix sum_k c_k P_k. The overload taking precomputed
/// terms avoids re-enumerating Pauli strings in inner loops.
ComplexMatrix assemble_hamiltonian(const TwoLocalHamiltonian& h);
ComplexMatrix assemble_hamiltonian(const TwoLocalHamiltonian& h, std::span<const ComplexMatrix> terms);

/// Haar-random unitary: complex Ginibre matrix orthonormalized column by
/// column with modified Gram-Schmidt plus one reorthogonalization pass.
ComplexMatrix haar_unitary(int dim, Rng& rng);

/// Haar-random pure state on the full register: normalized vector of
/// standard complex normals.
StateVector haar_state(const BipartiteDims& dims, Rng& rng);

/// GUE matrix H = (A + A^dag) / 2 with A_ij standard complex normal, so
/// E|H_ij|^2 = 1/2 for all entries.
ComplexMatrix gue_hamiltonian(int dim, Rng& rng);

}  // namespace plateaulab
