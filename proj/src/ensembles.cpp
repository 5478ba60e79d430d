#include "plateaulab/ensembles.hpp"

#include <cmath>
#include <string>

#include "plateaulab/linalg.hpp"

namespace plateaulab {

CoeffDistribution CoeffDistribution::make_normal(double mean, double variance) {
    CoeffDistribution d;
    d.kind = Kind::normal;
    d.mean = mean;
    d.variance = variance;
    d.validate();
    return d;
}

CoeffDistribution CoeffDistribution::make_uniform(double lo, double hi) {
    CoeffDistribution d;
    d.kind = Kind::uniform;
    d.lo = lo;
    d.hi = hi;
    d.validate();
    return d;
}

double CoeffDistribution::sample(Rng& rng) const {
    if (kind == Kind::normal) return mean + std::sqrt(variance) * rng.normal();
    return lo + (hi - lo) * rng.uniform();
}

void CoeffDistribution::validate() const {
    if (kind == Kind::normal) {
        if (!(variance >= 0.0) || !std::isfinite(variance) || !std::isfinite(mean))
            throw Error("coefficient distribution: normal law needs finite mean and variance >= 0");
    } else {
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw Error("coefficient distribution: uniform law needs finite lo <= hi");
    }
}

void TwoLocalHamiltonian::validate() const {
    if (n < 1) throw DimensionError("two-local hamiltonian: need at least one qubit");
    if (coefficients.size() != static_cast<std::size_t>(term_count(n)))
        throw DimensionError("two-local hamiltonian: expected " + std::to_string(term_count(n)) +
                             " coefficients, got " + std::to_string(coefficients.size()));
}

ComplexMatrix pauli(int axis) {
    ComplexMatrix m(2);
    switch (axis) {
        case 0:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 1:
            m(0, 1) = Complex(0.0, -1.0);
            m(1, 0) = Complex(0.0, 1.0);
            break;
        case 2:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw Error("pauli: axis must be 0, 1 or 2");
    }
    return m;
}

namespace {

// Pauli string with sigma_a at site i (and sigma_b at site j when j >= 0).
// Site 0 is the leftmost kron factor, i.e. the most significant index bits.
ComplexMatrix pauli_string(int n, int i, int a, int j, int b) {
    const auto factor = [&](int site) {
        if (site == i) return pauli(a);
        if (site == j) return pauli(b);
        return ComplexMatrix::identity(2);
    };
    ComplexMatrix out = factor(0);
    for (int site = 1; site < n; ++site) out = kron(out, factor(site));
    return out;
}

}  // namespace

std::vector<ComplexMatrix> enumerate_two_local_terms(int n) {
    if (n < 1) throw DimensionError("enumerate_two_local_terms: need at least one qubit");
    std::vector<ComplexMatrix> terms;
    terms.reserve(TwoLocalHamiltonian::term_count(n));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a) terms.push_back(pauli_string(n, i, a, -1, -1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) terms.push_back(pauli_string(n, i, a, j, b));
    return terms;
}

TwoLocalHamiltonian sample_two_local(int n, const CoeffDistribution& onsite,
                                     const CoeffDistribution& offsite, Rng& rng) {
    if (n < 1) throw DimensionError("sample_two_local: need at least one qubit");
    onsite.validate();
    offsite.validate();
    TwoLocalHamiltonian h;
    h.n = n;
    h.coefficients.reserve(TwoLocalHamiltonian::term_count(n));
    for (int k = 0; k < TwoLocalHamiltonian::onsite_count(n); ++k)
        h.coefficients.push_back(onsite.sample(rng));
    for (int k = 0; k < TwoLocalHamiltonian::offsite_count(n); ++k)
        h.coefficients.push_back(offsite.sample(rng));
    return h;
}

ComplexMatrix assemble_hamiltonian(const TwoLocalHamiltonian& h) {
    const auto terms = enumerate_two_local_terms(h.n);
    return assemble_hamiltonian(h, terms);
}

ComplexMatrix assemble_hamiltonian(const TwoLocalHamiltonian& h, std::span<const ComplexMatrix> terms) {
    h.validate();
    if (terms.size() != h.coefficients.size())
        throw DimensionError("assemble_hamiltonian: term list does not match coefficient count");
    ComplexMatrix out(1 << h.n);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const double c = h.coefficients[k];
        if (c == 0.0) continue;
        const ComplexMatrix& t = terms[k];
        for (std::size_t idx = 0; idx < out.size(); ++idx) out.data()[idx] += c * t.data()[idx];
    }
    return out;
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw DimensionError("haar_unitary: dimension must be positive");
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();

    // Modified Gram-Schmidt over columns; projecting twice restores
    // orthogonality lost to rounding. Normalization by a positive real
    // fixes the phase convention, which keeps the result Haar-distributed.
    for (int j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                Complex proj = 0.0;
                for (int i = 0; i < dim; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < dim; ++i) g(i, j) -= proj * g(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < dim; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw NumericError("haar_unitary: degenerate Ginibre column");
        for (int i = 0; i < dim; ++i) g(i, j) /= nrm;
    }
    return g;
}

StateVector haar_state(const BipartiteDims& dims, Rng& rng) {
    StateVector psi(dims.total_dim());
    for (auto& c : psi) c = rng.complex_normal();
    const double nrm = state_norm(psi);
    if (nrm == 0.0) throw NumericError("haar_state: degenerate Gaussian vector");
    for (auto& c : psi) c /= nrm;
    return psi;
}

ComplexMatrix gue_hamiltonian(int dim, Rng& rng) {
    if (dim < 1) throw DimensionError("gue_hamiltonian: dimension must be positive");
    ComplexMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = rng.complex_normal();
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

}  // namespace plateaulab
