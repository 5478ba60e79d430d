#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "plateaulab/linalg.hpp"

namespace plateaulab {

/// One gradient sample: full gradient vector plus its sup norm.
struct GradientRecord {
    std::string model;
    BipartiteDims dims;
    int instance = 0;
    std::uint64_t seed = 0;
    std::vector<double> gradient;
    double inf_norm = 0.0;
};

/// Central-difference gradient of f at theta with step h:
/// g_k = (f(theta + h e_k) - f(theta - h e_k)) / (2h).
std::vector<double> finite_diff_gradient(const std::function<double(const std::vector<double>&)>& f,
                                         const std::vector<double>& theta, double step);

/// Exact derivative of <obs (x) I> on the thermal state of H along the
/// Hamiltonian direction hk, via the divided-difference (Daleckii-Krein)
/// form of d exp(-H) in the eigenbasis of H.
double exact_thermal_derivative(const ComplexMatrix& h, const ComplexMatrix& hk,
                                const ComplexMatrix& obs, const BipartiteDims& dims);

/// First-order change of eigenvector n of H under a perturbation hk:
/// sum_{j != n} |j> <j|hk|n> / (E_n - E_j). Requires nondegenerate gaps.
StateVector first_order_eigvec_shift(const Spectrum& spectrum, const ComplexMatrix& hk, int n);

/// max_k | (1/D) sum_{j != k} 1 / (E_j - E_k) |, the inverse-gap statistic
/// controlling the size of first-order eigenvector corrections.
double gap_statistic(const Spectrum& spectrum);

/// Sup norm of a real vector.
double inf_norm(std::span<const double> v);

}  // namespace plateaulab
