#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "photatom/amplitude.hpp"

namespace photatom {

// A requested mode's weight sits below the numerical floor.
class lambda_underflow_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mode-pair expansion of a joint amplitude: A(q,k) = sum_n sqrt(lambda_n)
// psi_n(q) phi_n(k) with quadrature-orthonormal mode functions.
struct SchmidtSpectrum {
    GridSpec grid;
    Eigen::ArrayXd lambdas;  // descending, clamped >= 0, renormalized to 1
    double K;                // inverse participation ratio 1 / sum(lambda^2)
    double raw_sum_residue;  // sum(sigma^2) - 1 before renormalization;
                             // quadrature-truncation diagnostic
    Eigen::MatrixXcd atom_modes;    // n_q x stored modes, psi_n columns
    Eigen::MatrixXcd photon_modes;  // n_k x stored modes, phi_n columns
};

// Decomposes a normalized field through the singular value factorization
// of the weight-symmetrized matrix M_ij = sqrt(wq_i) values_ij sqrt(wk_j);
// lambda_n = sigma_n^2.  The leading n_modes mode pairs are rescaled by
// 1/sqrt(w) back to continuum functions and gauge-fixed so each photon
// mode's largest-magnitude sample is real positive (the paired atom mode
// absorbs the conjugate phase, keeping the product invariant).
SchmidtSpectrum schmidt_decompose(const AmplitudeField& field,
                                  int n_modes = 0);

// 1 / sum(lambda^2), recomputed from the stored spectrum.
double schmidt_number(const SchmidtSpectrum& spectrum);

// Partial mode sum  sum_{n < n_terms} sqrt(lambda_n) psi_n(q) phi_n(k).
// Not renormalized: with all stored modes of a full decomposition the
// result reproduces the input field directly.
AmplitudeField reconstruct(const SchmidtSpectrum& spectrum, int n_terms);

// Recovers the atom modes from the photon modes by quadrature projection,
// psi_n(q) = (1/sqrt(lambda_n)) sum_j wk_j A(q,k_j) conj(phi_n(k_j)).
// Requires lambda_n >= 1e-12 for every stored mode.
Eigen::MatrixXcd atom_modes_from_photon(const AmplitudeField& field,
                                        const SchmidtSpectrum& spectrum);

// Independent cross-check path: explicitly forms the photon density matrix
// rho(k,k') = sum_i wq_i A(q_i,k) conj(A(q_i,k')), symmetrizes it with the
// quadrature weights and diagonalizes with the in-house Jacobi solver.
// Guarded to small grids (max(n_q, n_k) <= 256).
SchmidtSpectrum oracle_schmidt(const AmplitudeField& field);

// Number of strict local maxima of |mode|^2 above rel_threshold times the
// global maximum, after 3-point smoothing; a plateau of equal smoothed
// samples bounded by strictly smaller neighbors counts as one peak.
int count_peaks(const Eigen::VectorXcd& mode, double rel_threshold = 0.05);

}  // namespace photatom
