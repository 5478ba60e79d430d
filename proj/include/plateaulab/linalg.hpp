#pragma once

#include <functional>
#include <vector>

#include "plateaulab/complex_matrix.hpp"

namespace plateaulab {

/// Eigendecomposition of a Hermitian matrix: H = V diag(eigenvalues) V^dag.
/// Eigenvalues ascending; column j of eigenvectors pairs with eigenvalues[j].
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Full Hermitian eigendecomposition via cyclic Jacobi rotations.
Spectrum hermitian_eig(const ComplexMatrix& h);

/// Eigenvalues only (ascending); skips accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// f applied to a Hermitian matrix through its spectrum: V diag(f(lambda)) V^dag.
ComplexMatrix func_of_hermitian(const ComplexMatrix& h, const std::function<Complex(double)>& f);

/// Trace over the hidden subsystem; result is visible_dim x visible_dim.
ComplexMatrix partial_trace_hidden(const ComplexMatrix& rho, const BipartiteDims& dims);

/// T(rho, sigma) = (1/2) sum |eigenvalues(rho - sigma)|.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// S(rho) = -sum p ln p over eigenvalues above 1e-12, natural log.
double von_neumann_entropy(const ComplexMatrix& rho);

/// S(rho || sigma) = Tr rho ln rho - Tr rho ln sigma; throws SupportError
/// when rho has weight on eigenvectors of sigma with eigenvalue <= 1e-12.
double quantum_relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// F = <psi| rho |psi> for a normalized pure state against a density operator.
double fidelity(const StateVector& psi, const ComplexMatrix& rho);

/// Operator (spectral) norm of a Hermitian matrix: max |eigenvalue|.
double operator_norm(const ComplexMatrix& h);

/// Swap operator on C^d (x) C^d: F |a,b> = |b,a>.
ComplexMatrix flip_operator(int d);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rank-one density operator |psi><psi|.
ComplexMatrix pure_density(const StateVector& psi);

/// Euclidean norm of a state vector.
double state_norm(const StateVector& psi);

}  // namespace plateaulab
