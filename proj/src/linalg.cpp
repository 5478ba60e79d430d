#include "plateaulab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace plateaulab {

namespace {

constexpr double kOffDiagTol = 1e-12;
constexpr double kSpectrumClip = 1e-12;
constexpr int kMaxSweeps = 100;

double offdiag_frobenius(const ComplexMatrix& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

// Two-sided rotation G^dag A G zeroing the pivot pair (p, q), with
// G_pp = c, G_pq = s e^{i a}, G_qp = -s e^{-i a}, G_qq = c and
// e^{i a} the phase of A_pq. V accumulates V <- V G when present.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix* v, int p, int q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    const Complex phase = apq / r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex sp = s * phase;
    const Complex spc = s * std::conj(phase);

    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        const Complex aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - spc * aiq;
        a(i, q) = sp * aip + c * aiq;
    }
    for (int j = 0; j < n; ++j) {
        const Complex apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj - sp * aqj;
        a(q, j) = spc * apj + c * aqj;
    }
    // Closed forms for the pivot block keep it exactly Hermitian.
    a(p, p) = c * c * app + s * s * aqq - 2.0 * s * c * r;
    a(q, q) = s * s * app + c * c * aqq + 2.0 * s * c * r;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    if (v) {
        for (int i = 0; i < n; ++i) {
            const Complex vip = (*v)(i, p), viq = (*v)(i, q);
            (*v)(i, p) = c * vip - spc * viq;
            (*v)(i, q) = sp * vip + c * viq;
        }
    }
}

Spectrum eig_impl(const ComplexMatrix& h, bool want_vectors) {
    require_hermitian(h, "hermitian_eig");
    const int n = h.dim();

    // Work on the exactly Hermitian part; removes sub-tolerance asymmetry.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    ComplexMatrix vecs;
    if (want_vectors) vecs = ComplexMatrix::identity(n);

    // Absolute floor of 1e-12, made relative for matrices of large norm so
    // the target stays reachable in double precision.
    const double tol = kOffDiagTol * std::max(1.0, a.frobenius_norm());
    const double skip = tol / n;

    bool converged = offdiag_frobenius(a) <= tol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip) jacobi_rotate(a, want_vectors ? &vecs : nullptr, p, q);
        converged = offdiag_frobenius(a) <= tol;
    }
    if (!converged)
        throw NumericError("hermitian_eig: no convergence within " + std::to_string(kMaxSweeps) +
                           " Jacobi sweeps");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.eigenvalues.resize(n);
    for (int j = 0; j < n; ++j) out.eigenvalues[j] = a(order[j], order[j]).real();
    if (want_vectors) {
        out.eigenvectors = ComplexMatrix(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = vecs(i, order[j]);
    }
    return out;
}

// Sum of p ln p over the spectrum of a density operator, eigenvalues at or
// below the clip threshold contributing zero.
double trace_rho_ln_rho(const std::vector<double>& evals, const char* context) {
    double acc = 0.0;
    for (double p : evals) {
        if (p < -1e-8)
            throw NumericError(std::string(context) + ": eigenvalue " + std::to_string(p) +
                               " below zero beyond tolerance");
        if (p > kSpectrumClip) acc += p * std::log(p);
    }
    return acc;
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& h) { return eig_impl(h, true); }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    return eig_impl(h, false).eigenvalues;
}

ComplexMatrix func_of_hermitian(const ComplexMatrix& h, const std::function<Complex(double)>& f) {
    const Spectrum s = hermitian_eig(h);
    const int n = h.dim();
    ComplexMatrix scaled = s.eigenvectors;
    for (int j = 0; j < n; ++j) {
        const Complex fj = f(s.eigenvalues[j]);
        for (int i = 0; i < n; ++i) scaled(i, j) *= fj;
    }
    return multiply(scaled, s.eigenvectors.adjoint());
}

ComplexMatrix partial_trace_hidden(const ComplexMatrix& rho, const BipartiteDims& dims) {
    if (rho.dim() != dims.total_dim())
        throw DimensionError("partial_trace_hidden: operator dim " + std::to_string(rho.dim()) +
                             " does not match register dim " + std::to_string(dims.total_dim()));
    const int dv = dims.visible_dim();
    const int dh = dims.hidden_dim();
    ComplexMatrix out(dv);
    for (int v1 = 0; v1 < dv; ++v1)
        for (int v2 = 0; v2 < dv; ++v2) {
            Complex acc = 0.0;
            for (int h = 0; h < dh; ++h) acc += rho(v1 * dh + h, v2 * dh + h);
            out(v1, v2) = acc;
        }
    return out;
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    require_same_dim(rho, sigma, "trace_distance");
    ComplexMatrix diff = rho - sigma;
    require_hermitian(diff, "trace_distance (difference)", 2e-12);
    double acc = 0.0;
    for (double lam : hermitian_eigenvalues(diff)) acc += std::abs(lam);
    return 0.5 * acc;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    require_hermitian(rho, "von_neumann_entropy");
    return -trace_rho_ln_rho(hermitian_eigenvalues(rho), "von_neumann_entropy");
}

double quantum_relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    require_same_dim(rho, sigma, "quantum_relative_entropy");
    require_hermitian(rho, "quantum_relative_entropy (rho)");
    require_hermitian(sigma, "quantum_relative_entropy (sigma)");

    const double term1 = trace_rho_ln_rho(hermitian_eigenvalues(rho), "quantum_relative_entropy");

    const Spectrum ss = hermitian_eig(sigma);
    const int n = sigma.dim();
    double term2 = 0.0;
    StateVector col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = ss.eigenvectors(i, j);
        const StateVector rcol = matvec(rho, col);
        double w = 0.0;
        for (int i = 0; i < n; ++i) w += (std::conj(col[i]) * rcol[i]).real();
        if (ss.eigenvalues[j] <= kSpectrumClip) {
            if (w > 1e-10)
                throw SupportError("quantum_relative_entropy: rho has weight " + std::to_string(w) +
                                   " outside the support of sigma");
            continue;
        }
        term2 += w * std::log(ss.eigenvalues[j]);
    }
    return term1 - term2;
}

double fidelity(const StateVector& psi, const ComplexMatrix& rho) {
    if (psi.size() != static_cast<std::size_t>(rho.dim()))
        throw DimensionError("fidelity: state size " + std::to_string(psi.size()) +
                             " vs operator dim " + std::to_string(rho.dim()));
    const double nrm = state_norm(psi);
    if (std::abs(nrm - 1.0) > 1e-8)
        throw Error("fidelity: state vector not normalized (norm = " + std::to_string(nrm) + ")");
    const StateVector rpsi = matvec(rho, psi);
    double f = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) f += (std::conj(psi[i]) * rpsi[i]).real();
    return f;
}

double operator_norm(const ComplexMatrix& h) {
    double worst = 0.0;
    for (double lam : hermitian_eigenvalues(h)) worst = std::max(worst, std::abs(lam));
    return worst;
}

ComplexMatrix flip_operator(int d) {
    if (d < 1) throw DimensionError("flip_operator: local dimension must be positive");
    ComplexMatrix f(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) f(b * d + a, a * d + b) = 1.0;
    return f;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim();
    const int db = b.dim();
    ComplexMatrix out(da * db);
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < da; ++j1) {
            const Complex aij = a(i1, j1);
            if (aij == Complex(0.0)) continue;
            for (int i2 = 0; i2 < db; ++i2)
                for (int j2 = 0; j2 < db; ++j2)
                    out(i1 * db + i2, j1 * db + j2) = aij * b(i2, j2);
        }
    return out;
}

ComplexMatrix pure_density(const StateVector& psi) {
    const int n = static_cast<int>(psi.size());
    if (n < 1) throw DimensionError("pure_density: empty state vector");
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = psi[i] * std::conj(psi[j]);
    return out;
}

double state_norm(const StateVector& psi) {
    double s = 0.0;
    for (const auto& c : psi) s += std::norm(c);
    return std::sqrt(s);
}

}  // namespace plateaulab
