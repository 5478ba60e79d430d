#pragma once

#include <span>
#include <vector>

#include "plateaulab/ensembles.hpp"
#include "plateaulab/linalg.hpp"

namespace plateaulab {

/// Layered unitary network: parameters theta pair with the two-local term
/// list for n_v + n_h qubits, one rotation per term.
struct UnitaryAnsatz {
    BipartiteDims dims;
    std::vector<ComplexMatrix> terms;
    std::vector<double> theta;
};

/// Quantum Boltzmann machine: thermal state of a two-local Hamiltonian,
/// optionally normalized by its operator norm before exponentiation.
struct BoltzmannModel {
    BipartiteDims dims;
    TwoLocalHamiltonian hamiltonian;
    bool normalize = true;
};

/// prod_k exp(-i theta_k P_k) |0...0> with the product read right-to-left:
/// the highest term index is applied first, index 0 last. Each factor uses
/// exp(-i t P) = cos(t) I - i sin(t) P for involutions P.
StateVector unitary_qnn_state(std::span<const ComplexMatrix> terms, std::span<const double> theta,
                              int dim);
StateVector unitary_qnn_state(const UnitaryAnsatz& ansatz);

/// exp(-H) / Tr exp(-H), computed through the spectrum with every
/// eigenvalue shifted by the smallest one so no Boltzmann weight exceeds one.
ComplexMatrix thermal_state(const ComplexMatrix& h);

/// Density operator of a Boltzmann model. The overload taking precomputed
/// terms avoids re-enumerating Pauli strings.
ComplexMatrix boltzmann_state(const BoltzmannModel& model);
ComplexMatrix boltzmann_state(const BoltzmannModel& model, std::span<const ComplexMatrix> terms);

/// Tr(obs * Tr_h rho) for an observable on the visible subsystem.
double visible_expectation(const ComplexMatrix& obs, const ComplexMatrix& rho,
                           const BipartiteDims& dims);

/// Trace distance between the reduced visible state and the maximally
/// mixed state I / visible_dim.
double mixedness_distance(const ComplexMatrix& rho, const BipartiteDims& dims);

/// | S(Tr_h rho) - ln(visible_dim) |: distance of the visible entropy from
/// its volume-law ceiling.
double volume_law_gap(const ComplexMatrix& rho, const BipartiteDims& dims);

}  // namespace plateaulab
