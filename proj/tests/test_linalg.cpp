#include <doctest.h>

#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "photatom/linalg.hpp"

using namespace photatom;
using std::complex;

namespace {

Eigen::MatrixXcd random_complex(int rows, int cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = complex<double>(gauss(rng), gauss(rng));
    return m;
}

Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
    Eigen::MatrixXcd b = random_complex(n, n, seed);
    return 0.5 * (b + b.adjoint().eval());
}

}  // namespace

TEST_CASE("complex svd factors a random rectangular matrix") {
    Eigen::MatrixXcd a = random_complex(20, 12, 42);
    SvdResult svd = complex_svd(a, true);
    REQUIRE(svd.sigma.size() == 12);
    REQUIRE(svd.u.rows() == 20);
    REQUIRE(svd.u.cols() == 12);
    REQUIRE(svd.vh.rows() == 12);
    REQUIRE(svd.vh.cols() == 12);

    for (int i = 1; i < 12; ++i) CHECK(svd.sigma[i] <= svd.sigma[i - 1]);
    CHECK(svd.sigma[11] >= 0.0);

    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(12, 12);
    CHECK((svd.u.adjoint() * svd.u - eye).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((svd.vh * svd.vh.adjoint() - eye).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::MatrixXcd rebuilt = svd.u * svd.sigma.asDiagonal() * svd.vh;
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() <=
          1e-12 * a.cwiseAbs().maxCoeff() * 20);
}

TEST_CASE("values-only svd matches the full factorization") {
    Eigen::MatrixXcd a = random_complex(16, 16, 7);
    SvdResult full = complex_svd(a, true);
    SvdResult vals = complex_svd(a, false);
    CHECK(vals.u.size() == 0);
    CHECK(vals.vh.size() == 0);
    REQUIRE(vals.sigma.size() == full.sigma.size());
    CHECK((vals.sigma - full.sigma).cwiseAbs().maxCoeff() <=
          1e-13 * full.sigma[0]);
}

TEST_CASE("svd of a rank-one outer product") {
    Eigen::MatrixXcd u = random_complex(15, 1, 3);
    Eigen::MatrixXcd v = random_complex(9, 1, 4);
    Eigen::MatrixXcd a = u * v.adjoint();
    SvdResult svd = complex_svd(a, false);
    CHECK(svd.sigma[0] == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
    for (int i = 1; i < svd.sigma.size(); ++i)
        CHECK(svd.sigma[i] <= 1e-13 * svd.sigma[0]);
}

TEST_CASE("jacobi diagonalizes a random hermitian matrix") {
    for (int n : {8, 40}) {
        Eigen::MatrixXcd a = random_hermitian(n, 100 + n);
        HermitianEig eig = jacobi_hermitian(a);
        REQUIRE(eig.values.size() == n);
        REQUIRE(eig.vectors.cols() == n);

        const double scale = a.cwiseAbs().maxCoeff();
        CHECK((a * eig.vectors - eig.vectors * eig.values.asDiagonal())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10 * scale * n);
        Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
        CHECK((eig.vectors.adjoint() * eig.vectors - eye)
                  .cwiseAbs()
                  .maxCoeff() <= 1e-11 * n);
        for (int i = 1; i < n; ++i) CHECK(eig.values[i] <= eig.values[i - 1]);

        // cross-check the spectrum against an independent implementation
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(a);
        Eigen::VectorXd want = ref.eigenvalues().reverse();
        CHECK((eig.values - want).cwiseAbs().maxCoeff() <= 1e-11 * scale * n);

        CHECK(eig.sweeps <= 64);
        CHECK(eig.off_diagonal <= 1e-13 * a.norm());
    }
}

TEST_CASE("jacobi handles already diagonal and degenerate spectra") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    d(2, 2) = 2.0;
    HermitianEig eig = jacobi_hermitian(d);
    CHECK(eig.sweeps == 0);
    CHECK(eig.values[0] == 3.0);
    CHECK(eig.values[1] == 2.0);
    CHECK(eig.values[2] == 1.0);

    // exact two-level system: eigenvalues 2 and 0
    Eigen::MatrixXcd two(2, 2);
    two(0, 0) = 1.0;
    two(0, 1) = complex<double>(0.0, 1.0);
    two(1, 0) = complex<double>(0.0, -1.0);
    two(1, 1) = 1.0;
    HermitianEig pair = jacobi_hermitian(two);
    CHECK(pair.values[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(pair.values[1]) <= 1e-13);
    CHECK((two * pair.vectors - pair.vectors * pair.values.asDiagonal())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    // repeated eigenvalue block stays orthonormal
    Eigen::MatrixXcd rep = random_hermitian(6, 5);
    Eigen::MatrixXcd shifted = rep + 10.0 * Eigen::MatrixXcd::Identity(6, 6);
    HermitianEig se = jacobi_hermitian(shifted);
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(6, 6);
    CHECK((se.vectors.adjoint() * se.vectors - eye).cwiseAbs().maxCoeff() <=
          1e-11);
}

TEST_CASE("jacobi rejects malformed input") {
    CHECK_THROWS_AS(jacobi_hermitian(random_complex(4, 5, 1)),
                    std::invalid_argument);
    Eigen::MatrixXcd nh = random_complex(5, 5, 2);  // not hermitian
    CHECK_THROWS_AS(jacobi_hermitian(nh), std::invalid_argument);
}
