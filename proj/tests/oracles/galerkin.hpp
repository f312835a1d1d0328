#pragma once

// Legendre-Galerkin eigenvalues of -((1-x^2)u')' + q u for a polynomial q.
// In the orthonormal basis phi_k = sqrt((2k+1)/2) P_k, multiplication by x is
// the Jacobi matrix with off-diagonal k / sqrt((2k-1)(2k+1)), so the potential
// matrix is the polynomial in that matrix, taken on a padded basis and truncated.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace oracle {

inline std::vector<double> galerkin_eigenvalues(const std::vector<double>& coeffs, int basis_size) {
    const int degree = static_cast<int>(coeffs.size()) - 1;
    const int padded = basis_size + degree;
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(padded, padded);
    for (int k = 1; k < padded; ++k) {
        const double a = k / std::sqrt((2.0 * k - 1) * (2.0 * k + 1));
        X(k, k - 1) = a;
        X(k - 1, k) = a;
    }
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(padded, padded);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(padded, padded);
    for (int k = 0; k <= degree; ++k) {
        Q += coeffs[static_cast<std::size_t>(k)] * power;
        power = power * X;
    }
    Eigen::MatrixXd H = Q.topLeftCorner(basis_size, basis_size);
    for (int k = 0; k < basis_size; ++k) {
        H(k, k) += k * (k + 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace oracle
