#include "plateaulab/models.hpp"

#include <cmath>
#include <string>

namespace plateaulab {

StateVector unitary_qnn_state(std::span<const ComplexMatrix> terms, std::span<const double> theta,
                              int dim) {
    if (terms.size() != theta.size())
        throw DimensionError("unitary_qnn_state: " + std::to_string(terms.size()) + " terms vs " +
                             std::to_string(theta.size()) + " parameters");
    StateVector psi(dim);
    psi[0] = 1.0;
    for (std::size_t k = terms.size(); k-- > 0;) {
        if (terms[k].dim() != dim) throw DimensionError("unitary_qnn_state: term dimension mismatch");
        const double c = std::cos(theta[k]);
        const Complex ms(0.0, -std::sin(theta[k]));
        const StateVector ppsi = matvec(terms[k], psi);
        for (int i = 0; i < dim; ++i) psi[i] = c * psi[i] + ms * ppsi[i];
    }
    return psi;
}

StateVector unitary_qnn_state(const UnitaryAnsatz& ansatz) {
    return unitary_qnn_state(ansatz.terms, ansatz.theta, ansatz.dims.total_dim());
}

ComplexMatrix thermal_state(const ComplexMatrix& h) {
    const Spectrum s = hermitian_eig(h);
    const int n = h.dim();
    const double lam_min = s.eigenvalues.front();

    std::vector<double> w(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = std::exp(-(s.eigenvalues[i] - lam_min));
        z += w[i];
    }

    ComplexMatrix scaled = s.eigenvectors;
    for (int j = 0; j < n; ++j) {
        const double p = w[j] / z;
        for (int i = 0; i < n; ++i) scaled(i, j) *= p;
    }
    return multiply(scaled, s.eigenvectors.adjoint());
}

ComplexMatrix boltzmann_state(const BoltzmannModel& model) {
    const auto terms = enumerate_two_local_terms(model.hamiltonian.n);
    return boltzmann_state(model, terms);
}

ComplexMatrix boltzmann_state(const BoltzmannModel& model, std::span<const ComplexMatrix> terms) {
    if (model.hamiltonian.n != model.dims.n_v + model.dims.n_h)
        throw DimensionError("boltzmann_state: hamiltonian qubit count does not match dims");
    ComplexMatrix h = assemble_hamiltonian(model.hamiltonian, terms);
    if (model.normalize) {
        const double nrm = operator_norm(h);
        if (nrm > 0.0) h *= 1.0 / nrm;
    }
    return thermal_state(h);
}

double visible_expectation(const ComplexMatrix& obs, const ComplexMatrix& rho,
                           const BipartiteDims& dims) {
    if (obs.dim() != dims.visible_dim())
        throw DimensionError("visible_expectation: observable dim " + std::to_string(obs.dim()) +
                             " vs visible dim " + std::to_string(dims.visible_dim()));
    const ComplexMatrix rv = partial_trace_hidden(rho, dims);
    Complex acc = 0.0;
    for (int i = 0; i < obs.dim(); ++i)
        for (int j = 0; j < obs.dim(); ++j) acc += obs(i, j) * rv(j, i);
    return acc.real();
}

double mixedness_distance(const ComplexMatrix& rho, const BipartiteDims& dims) {
    const ComplexMatrix rv = partial_trace_hidden(rho, dims);
    ComplexMatrix mixed = ComplexMatrix::identity(dims.visible_dim());
    mixed *= 1.0 / dims.visible_dim();
    return trace_distance(rv, mixed);
}

double volume_law_gap(const ComplexMatrix& rho, const BipartiteDims& dims) {
    const ComplexMatrix rv = partial_trace_hidden(rho, dims);
    return std::abs(von_neumann_entropy(rv) - std::log(static_cast<double>(dims.visible_dim())));
}

}  // namespace plateaulab
