#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace shiftsym {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Smallest singular value of a square matrix; 0 for an empty matrix.
double min_singular(const Matrix& m);

/// All singular values, descending.
Eigen::VectorXd singular_values(const Matrix& m);

/// max_{ij} |a_ij - b_ij|; dimensions must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max_{ij} |a_ij|
double max_abs(const Matrix& a);

/// Kronecker product a (x) b with b varying fastest.
Matrix kron(const Matrix& a, const Matrix& b);

/// Orthonormal basis (columns) of the range of an orthogonal projector, taken
/// from the eigenvalue-1 eigenspace of its Hermitian part.
Matrix projector_range(const Matrix& projector, double tol = 1e-8);

}  // namespace shiftsym
