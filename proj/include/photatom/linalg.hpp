#pragma once

#include <Eigen/Core>

namespace photatom {

// Thin dense complex kernels: a LAPACK-backed SVD for the production
// decomposition path, and a hand-rolled Hermitian Jacobi solver kept as an
// algorithmically independent cross-check route.

struct SvdResult {
    Eigen::VectorXd sigma;  // singular values, descending
    Eigen::MatrixXcd u;     // m x r left vectors; empty unless requested
    Eigen::MatrixXcd vh;    // r x n right vectors (conjugate-transposed);
                            // empty unless requested
};

// Divide-and-conquer SVD of a general complex matrix.  With want_vectors
// the thin factors are returned; otherwise only the singular values are
// computed (much faster for spectra-only sweeps).  Throws std::runtime_error
// with the failing-superdiagonal count if the factorization stalls.
SvdResult complex_svd(const Eigen::MatrixXcd& a, bool want_vectors);

struct HermitianEig {
    Eigen::VectorXd values;    // eigenvalues, descending
    Eigen::MatrixXcd vectors;  // columns paired with values
    int sweeps;                // cyclic sweeps used
    double off_diagonal;       // final off-diagonal Frobenius norm
};

// Cyclic-by-rows complex Jacobi diagonalization of a Hermitian matrix.
// Each rotation annihilates one off-diagonal pair via a phased Givens
// rotation; sweeps repeat until the off-diagonal Frobenius norm falls
// below tol * ||a||_F.  O(n^3) per sweep -- intended for n <= ~256.
HermitianEig jacobi_hermitian(Eigen::MatrixXcd a, int max_sweeps = 64,
                              double tol = 1e-13);

}  // namespace photatom
