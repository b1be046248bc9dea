#include "photatom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace photatom {

SvdResult complex_svd(const Eigen::MatrixXcd& a, bool want_vectors) {
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    if (m == 0 || n == 0) {
        throw std::invalid_argument("complex_svd requires a non-empty matrix");
    }
    const lapack_int r = std::min(m, n);

    Eigen::MatrixXcd work = a;  // the driver destroys its input
    SvdResult result;
    result.sigma.resize(r);

    lapack_int info;
    if (want_vectors) {
        result.u.resize(m, r);
        result.vh.resize(r, n);
        info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m,
                              result.sigma.data(), result.u.data(), m,
                              result.vh.data(), r);
    } else {
        info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                              result.sigma.data(), nullptr, 1, nullptr, 1);
    }
    if (info < 0) {
        throw std::runtime_error("complex_svd: illegal argument " +
                                 std::to_string(-info));
    }
    if (info > 0) {
        throw std::runtime_error(
            "complex_svd did not converge: " + std::to_string(info) +
            " intermediate superdiagonals failed to reduce");
    }
    return result;
}

namespace {

double off_diagonal_norm(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    double acc = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p != q) acc += std::norm(a(p, q));
        }
    }
    return std::sqrt(acc);
}

}  // namespace

HermitianEig jacobi_hermitian(Eigen::MatrixXcd a, int max_sweeps, double tol) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) {
        throw std::invalid_argument("jacobi_hermitian requires a square matrix");
    }
    const double scale = a.norm();
    if ((a - a.adjoint()).norm() > 1e-10 * std::max(scale, 1.0)) {
        throw std::invalid_argument("jacobi_hermitian requires a Hermitian matrix");
    }
    // fold rounding asymmetry away so the rotations see an exactly
    // Hermitian matrix
    a = 0.5 * (a + a.adjoint().eval());

    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
    int sweeps = 0;
    double off = off_diagonal_norm(a);

    while (off > tol * std::max(scale, 1e-300) && sweeps < max_sweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const std::complex<double> phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();

                // phased Givens rotation U = [[c, -s*phase],
                //                             [s*conj(phase), c]]
                // annihilating (U^H A U)_{pq}: with theta = (aqq-app)/(2|apq|)
                // the tangent solves t^2 - 2*theta*t - 1 = 0 (smaller root)
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (theta == 0.0) {
                    t = 1.0;
                } else {
                    t = -std::copysign(1.0, theta) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const Eigen::VectorXcd col_p = a.col(p);
                const Eigen::VectorXcd col_q = a.col(q);
                a.col(p) = c * col_p + s * std::conj(phase) * col_q;
                a.col(q) = -s * phase * col_p + c * col_q;

                const Eigen::RowVectorXcd row_p = a.row(p);
                const Eigen::RowVectorXcd row_q = a.row(q);
                a.row(p) = c * row_p + s * phase * row_q;
                a.row(q) = -s * std::conj(phase) * row_p + c * row_q;

                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                const Eigen::VectorXcd v_p = v.col(p);
                const Eigen::VectorXcd v_q = v.col(q);
                v.col(p) = c * v_p + s * std::conj(phase) * v_q;
                v.col(q) = -s * phase * v_p + c * v_q;
            }
        }
        ++sweeps;
        off = off_diagonal_norm(a);
    }

    if (off > tol * std::max(scale, 1e-300)) {
        throw std::runtime_error(
            "jacobi_hermitian did not converge: off-diagonal norm " +
            std::to_string(off) + " after " + std::to_string(sweeps) +
            " sweeps");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](int lhs, int rhs) {
        return a(lhs, lhs).real() > a(rhs, rhs).real();
    });

    HermitianEig eig;
    eig.values.resize(n);
    eig.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        eig.values[i] = a(order[i], order[i]).real();
        eig.vectors.col(i) = v.col(order[i]);
    }
    eig.sweeps = sweeps;
    eig.off_diagonal = off;
    return eig;
}

}  // namespace photatom
