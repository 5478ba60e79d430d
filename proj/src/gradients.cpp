#include "plateaulab/gradients.hpp"

#include <cmath>
#include <string>

namespace plateaulab {

namespace {

// Divided difference of exp(-x): (e^{-x} - e^{-y}) / (y - x), evaluated
// through sinh around the midpoint when the gap is small enough for the
// direct form to cancel.
double exp_divided_difference(double x, double y) {
    const double d = y - x;
    if (std::abs(d) < 0.5) {
        const double m = 0.5 * (x + y);
        const double half = 0.5 * d;
        const double ratio = (half == 0.0) ? 1.0 : std::sinh(half) / half;
        return std::exp(-m) * ratio;
    }
    return (std::exp(-x) - std::exp(-y)) / d;
}

}  // namespace

std::vector<double> finite_diff_gradient(const std::function<double(const std::vector<double>&)>& f,
                                         const std::vector<double>& theta, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw Error("finite_diff_gradient: step must be positive and finite");
    std::vector<double> point = theta;
    std::vector<double> grad(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        point[k] = theta[k] + step;
        const double fp = f(point);
        point[k] = theta[k] - step;
        const double fm = f(point);
        point[k] = theta[k];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw NumericError("finite_diff_gradient: objective returned a non-finite value");
        grad[k] = (fp - fm) / (2.0 * step);
    }
    return grad;
}

double exact_thermal_derivative(const ComplexMatrix& h, const ComplexMatrix& hk,
                                const ComplexMatrix& obs, const BipartiteDims& dims) {
    require_same_dim(h, hk, "exact_thermal_derivative");
    if (h.dim() != dims.total_dim())
        throw DimensionError("exact_thermal_derivative: hamiltonian dim does not match register");
    if (obs.dim() != dims.visible_dim())
        throw DimensionError("exact_thermal_derivative: observable must act on the visible space");
    require_hermitian(hk, "exact_thermal_derivative (direction)");
    require_hermitian(obs, "exact_thermal_derivative (observable)");

    const Spectrum s = hermitian_eig(h);
    const int n = h.dim();
    const double lam_min = s.eigenvalues.front();

    // Shifted exponent: the quotient (Tr O E)' / Z is invariant under
    // H -> H - c I, and the shift keeps every weight at most one.
    std::vector<double> mu(n), w(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        mu[i] = s.eigenvalues[i] - lam_min;
        w[i] = std::exp(-mu[i]);
        z += w[i];
    }

    const ComplexMatrix udag = s.eigenvectors.adjoint();
    const ComplexMatrix m = multiply(udag, multiply(hk, s.eigenvectors));
    const ComplexMatrix ofull = kron(obs, ComplexMatrix::identity(dims.hidden_dim()));
    const ComplexMatrix g = multiply(udag, multiply(ofull, s.eigenvectors));

    // E = exp(-H): dE in the eigenbasis is -(M o phi) with phi the divided
    // difference of exp(-x) over eigenvalue pairs.
    double numer = 0.0;   // Tr(O dE)
    double dz = 0.0;      // Tr(dE)
    double expect = 0.0;  // Tr(O E)
    for (int i = 0; i < n; ++i) {
        expect += w[i] * g(i, i).real();
        dz -= w[i] * m(i, i).real();
        for (int j = 0; j < n; ++j)
            numer -= (g(i, j) * m(j, i)).real() * exp_divided_difference(mu[i], mu[j]);
    }
    return (numer * z - expect * dz) / (z * z);
}

StateVector first_order_eigvec_shift(const Spectrum& spectrum, const ComplexMatrix& hk, int n) {
    const int dim = spectrum.eigenvectors.dim();
    if (dim != static_cast<int>(spectrum.eigenvalues.size()))
        throw DimensionError("first_order_eigvec_shift: malformed spectrum");
    if (hk.dim() != dim) throw DimensionError("first_order_eigvec_shift: perturbation dim mismatch");
    if (n < 0 || n >= dim) throw DimensionError("first_order_eigvec_shift: eigenvector index out of range");

    const double en = spectrum.eigenvalues[n];
    for (int j = 0; j < dim; ++j) {
        if (j == n) continue;
        if (std::abs(en - spectrum.eigenvalues[j]) < 1e-8)
            throw DegeneracyError("first_order_eigvec_shift: gap below 1e-8 at eigenvalue index " +
                                  std::to_string(j));
    }

    StateVector un(dim);
    for (int i = 0; i < dim; ++i) un[i] = spectrum.eigenvectors(i, n);
    const StateVector hun = matvec(hk, un);

    StateVector out(dim, Complex(0.0));
    for (int j = 0; j < dim; ++j) {
        if (j == n) continue;
        Complex coeff = 0.0;
        for (int i = 0; i < dim; ++i) coeff += std::conj(spectrum.eigenvectors(i, j)) * hun[i];
        coeff /= en - spectrum.eigenvalues[j];
        for (int i = 0; i < dim; ++i) out[i] += coeff * spectrum.eigenvectors(i, j);
    }
    return out;
}

double gap_statistic(const Spectrum& spectrum) {
    const auto& e = spectrum.eigenvalues;
    const int d = static_cast<int>(e.size());
    for (int j = 0; j + 1 < d; ++j)
        if (std::abs(e[j + 1] - e[j]) < 1e-10)
            throw DegeneracyError("gap_statistic: degenerate spectrum at index " + std::to_string(j));
    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
        double acc = 0.0;
        for (int j = 0; j < d; ++j)
            if (j != k) acc += 1.0 / (e[j] - e[k]);
        worst = std::max(worst, std::abs(acc / d));
    }
    return worst;
}

double inf_norm(std::span<const double> v) {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

}  // namespace plateaulab
