#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "plateaulab/errors.hpp"

namespace plateaulab {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero matrix of dimension dim x dim.
    explicit ComplexMatrix(int dim) : dim_(check_dim(dim)), data_(static_cast<std::size_t>(dim) * dim) {}

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);
    ComplexMatrix& operator*=(double scale);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
    friend ComplexMatrix operator*(double scale, ComplexMatrix m) { return m *= scale; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;

    /// max_ij |A_ij - conj(A_ji)|.
    double hermiticity_deviation() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_deviation() <= tol; }

private:
    static int check_dim(int dim) {
        if (dim < 1) throw DimensionError("matrix dimension must be positive");
        return dim;
    }

    int dim_ = 0;
    std::vector<Complex> data_;
};

/// Matrix product a * b.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product a * x.
StateVector matvec(const ComplexMatrix& a, const StateVector& x);

/// Throws HermiticityError if a deviates from its adjoint by more than tol.
void require_hermitian(const ComplexMatrix& a, const char* context, double tol = 1e-12);

/// Throws DimensionError unless a and b share a dimension.
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* context);

/// Qubit split of a register into visible and hidden subsystems.
/// Visible qubits occupy the most significant positions: a full-register
/// basis index decomposes as index = v * hidden_dim() + h.
struct BipartiteDims {
    int n_v = 0;
    int n_h = 0;

    BipartiteDims() = default;
    BipartiteDims(int nv, int nh) : n_v(nv), n_h(nh) {
        if (nv < 1 || nh < 0) throw DimensionError("bipartite dims need n_v >= 1 and n_h >= 0");
    }

    int visible_dim() const { return 1 << n_v; }
    int hidden_dim() const { return 1 << n_h; }
    int total_dim() const { return 1 << (n_v + n_h); }

    bool operator==(const BipartiteDims&) const = default;
};

}  // namespace plateaulab
