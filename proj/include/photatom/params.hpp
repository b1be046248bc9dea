#pragma once

#include <array>

#include <Eigen/Core>

namespace photatom {

inline constexpr const char* kVersion = "1.0.0";

// Dimensionless controls of the photon-atom scattering problem:
//   eta     -- atomic momentum spread in natural-linewidth recoil units,
//              dq * hbar * k0 / (m * Gamma)
//   tau     -- incident photon bandwidth in linewidths, dk * c / Gamma
//   epsilon -- recoil shift hbar*k0^2 / (2*m*Gamma); ~1e-4 for optical
//              transitions, kept as a knob for the unapproximated amplitude
//   g_c     -- transverse coupling strength of the focused forward mode
struct ControlParams {
    double eta;
    double tau;
    double epsilon;
    double g_c;

    explicit ControlParams(double eta, double tau, double epsilon = 0.0,
                           double g_c = 0.0);
};

// Laboratory-frame inputs, SI units throughout.
struct PhysicalParams {
    double mass;   // atom mass [kg]
    double gamma;  // natural linewidth Gamma [rad/s]
    double k0;     // resonant wavenumber omega_a / c [1/m]
    double c;      // speed of light [m/s]
    double hbar;   // reduced Planck constant [J s]
    std::array<double, 3> dq;  // atomic momentum bandwidth per axis [1/m]
    std::array<double, 3> dk;  // photon wavenumber bandwidth per axis [1/m]
};

enum class SpaceAxis { x = 0, y = 1, z = 2 };

// Maps laboratory parameters to the dimensionless controls: the atomic
// spread is read along axis_q, the photon bandwidth along axis_k, and the
// two axes transverse to axis_k feed the forward coupling g_c.
ControlParams derive_controls(const PhysicalParams& phys, SpaceAxis axis_q,
                              SpaceAxis axis_k);

enum class QuadRule { midpoint, trapezoid };

// Tensor-product quadrature grid on [q_min,q_max] x [k_min,k_max].
// Nodes are generated from the exact center so grids with min = -max are
// symmetric about 0 to the last bit.
struct GridSpec {
    double q_min, q_max;
    double k_min, k_max;
    int n_q, n_k;
    QuadRule rule;

    GridSpec(double q_min, double q_max, double k_min, double k_max, int n_q,
             int n_k, QuadRule rule = QuadRule::midpoint);

    Eigen::ArrayXd q_nodes() const;
    Eigen::ArrayXd k_nodes() const;
    Eigen::ArrayXd q_weights() const;
    Eigen::ArrayXd k_weights() const;
};

// Default extents: the Gaussian envelope bounds the momentum axis at
// +-6*max(eta,1); the |A|^2 tails along the detuning axis fall off as
// 1/dk^4, so +-50*(1+tau) keeps the truncated norm below 1e-3.
GridSpec default_grid(const ControlParams& ctrl, int n);

}  // namespace photatom
