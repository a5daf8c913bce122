// numerics.hpp — dense complex matrix carrier and Hermitian eigendecomposition.

#pragma once

#include <Eigen/Dense>

#include <complex>

#include "esd/errors.hpp"

namespace esd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalues sorted ascending, eigenvector columns in matching order.
// V is unitary and V diag(E) V† reconstructs the input.
struct HermitianEigenDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

// Cyclic Jacobi diagonalisation of a Hermitian matrix. The input must satisfy
// ||M - M†||_F / max(1, ||M||_F) <= 1e-10; convergence is reached when the
// off-diagonal Frobenius norm falls below 1e-12 * ||M||_F (absolute 1e-12 for
// a zero-norm input). Throws NonHermitianInput or NoConvergence.
HermitianEigenDecomposition hermitian_eigen(const Matrix& m, int max_sweeps = 100);

// V† rho V and its inverse V rho V†. V must be unitary within 1e-10.
Matrix to_eigenbasis(const Matrix& rho, const Matrix& v);
Matrix from_eigenbasis(const Matrix& rho, const Matrix& v);

// sqrt(sum |A_ij - B_ij|^2)
double frobenius_distance(const Matrix& a, const Matrix& b);

} // namespace esd
