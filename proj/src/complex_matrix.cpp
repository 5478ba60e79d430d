#include "plateaulab/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plateaulab {

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_deviation() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matrix multiplication");
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        const Complex* arow = a.data() + static_cast<std::size_t>(i) * n;
        Complex* orow = out.data() + static_cast<std::size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const Complex aik = arow[k];
            if (aik == Complex(0.0)) continue;
            const Complex* brow = b.data() + static_cast<std::size_t>(k) * n;
            for (int j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

StateVector matvec(const ComplexMatrix& a, const StateVector& x) {
    const int n = a.dim();
    if (static_cast<std::size_t>(n) != x.size())
        throw DimensionError("matvec: matrix dim " + std::to_string(n) + " vs vector size " +
                             std::to_string(x.size()));
    StateVector y(x.size());
    for (int i = 0; i < n; ++i) {
        const Complex* arow = a.data() + static_cast<std::size_t>(i) * n;
        Complex acc = 0.0;
        for (int j = 0; j < n; ++j) acc += arow[j] * x[j];
        y[i] = acc;
    }
    return y;
}

void require_hermitian(const ComplexMatrix& a, const char* context, double tol) {
    const double dev = a.hermiticity_deviation();
    if (dev > tol)
        throw HermiticityError(std::string(context) + ": hermiticity violation, max |A_ij - conj(A_ji)| = " +
                               std::to_string(dev));
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* context) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(context) + ": dimension mismatch " + std::to_string(a.dim()) +
                             " vs " + std::to_string(b.dim()));
}

}  // namespace plateaulab
