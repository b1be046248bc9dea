#pragma once

#include <complex>

#include <Eigen/Core>

#include "photatom/params.hpp"

namespace photatom {

enum class FieldKind { scattered, transmitted, spontaneous, synthetic };

// Joint two-particle momentum amplitude sampled on a grid; values(i, j) is
// the amplitude at (q_nodes[i], k_nodes[j]).  `normalized` records that
// sum_ij wq_i * wk_j * |values(i,j)|^2 == 1 under the grid quadrature.
struct AmplitudeField {
    GridSpec grid;
    Eigen::MatrixXcd values;
    FieldKind kind = FieldKind::synthetic;
    bool normalized = false;
};

// sqrt(sum_ij wq_i wk_j |values|^2), accumulated in a fixed serial order so
// repeated evaluations are bit-identical.
double discrete_norm(const AmplitudeField& field);

// Divides by discrete_norm and sets the flag; rejects degenerate fields.
void renormalize(AmplitudeField& field);

// Side-scattered amplitude at momentum transfer dq and photon detuning dk
// (both dimensionless): a Gaussian momentum envelope over the product of
// the atomic resonance pole and the incident line-shape pole, carrying the
// analytic normalization N^2 = sqrt(2)*(1+tau) / (pi^{3/2} * tau * eta).
std::complex<double> scattered_point(const ControlParams& ctrl, double dq,
                                     double dk);

// The analytic constant N above; |scattered_point| <= N everywhere.
double scattered_norm_constant(const ControlParams& ctrl);

// Samples scattered_point on the grid, then renormalizes discretely (the
// analytic norm is exact only on the infinite plane).
AmplitudeField scattered_field(const ControlParams& ctrl, const GridSpec& grid);

// Broadband limit of the scattered channel: the incident line-shape pole
// drops out, leaving emission-with-recoil with a single resonance factor
// and N_s^2 = sqrt(2) / (pi^{3/2} * eta).
AmplitudeField spontaneous_field(double eta, const GridSpec& grid);

// Forward (transmitted) amplitude: the incident Gaussian momentum profile
// G times the Lorentzian spectral amplitude P, with the flat transmitted
// background interfering against the resonant reradiation term scaled by
// ctrl.g_c.  Both terms share the G*P factor, so the field is sampled in
// factored form to avoid cancellation error.
AmplitudeField transmitted_field(double eta, const ControlParams& ctrl,
                                 const GridSpec& grid);

}  // namespace photatom
