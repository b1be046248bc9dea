#include "photatom/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace photatom {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

Eigen::ArrayXd nodes_1d(double lo, double hi, int n, QuadRule rule) {
    const double center = 0.5 * (lo + hi);
    Eigen::ArrayXd x(n);
    if (rule == QuadRule::midpoint) {
        const double h = (hi - lo) / n;
        // offset (2j+1-n)/2 is an exact half-integer, so x_j = -x_{n-1-j}
        // holds exactly whenever center == 0
        for (int j = 0; j < n; ++j) x[j] = center + 0.5 * (2 * j + 1 - n) * h;
    } else {
        const double h = (hi - lo) / (n - 1);
        for (int j = 0; j < n; ++j) x[j] = center + 0.5 * (2 * j - (n - 1)) * h;
    }
    return x;
}

Eigen::ArrayXd weights_1d(double lo, double hi, int n, QuadRule rule) {
    Eigen::ArrayXd w(n);
    if (rule == QuadRule::midpoint) {
        w.setConstant((hi - lo) / n);
    } else {
        const double h = (hi - lo) / (n - 1);
        w.setConstant(h);
        w[0] = 0.5 * h;
        w[n - 1] = 0.5 * h;
    }
    return w;
}

}  // namespace

ControlParams::ControlParams(double eta_, double tau_, double epsilon_,
                             double g_c_)
    : eta(eta_), tau(tau_), epsilon(epsilon_), g_c(g_c_) {
    require(positive(eta), "eta must be positive and finite");
    require(positive(tau), "tau must be positive and finite");
    require(std::isfinite(epsilon) && epsilon >= 0.0,
            "epsilon must be non-negative and finite");
    require(std::isfinite(g_c) && g_c >= 0.0,
            "g_c must be non-negative and finite");
}

ControlParams derive_controls(const PhysicalParams& phys, SpaceAxis axis_q,
                              SpaceAxis axis_k) {
    require(positive(phys.mass), "mass must be positive");
    require(positive(phys.gamma), "gamma must be positive");
    require(positive(phys.k0), "k0 must be positive");
    require(positive(phys.c), "c must be positive");
    require(positive(phys.hbar), "hbar must be positive");
    for (int i = 0; i < 3; ++i) {
        require(positive(phys.dq[i]), "dq components must be positive");
        require(positive(phys.dk[i]), "dk components must be positive");
    }

    const double eta = phys.dq[static_cast<int>(axis_q)] * phys.hbar *
                       phys.k0 / (phys.mass * phys.gamma);
    const double tau =
        phys.dk[static_cast<int>(axis_k)] * phys.c / phys.gamma;
    const double epsilon =
        phys.hbar * phys.k0 * phys.k0 / (2.0 * phys.mass * phys.gamma);

    // transverse linewidth parameters feed the forward-mode coupling
    double g_c = (std::numbers::pi / 4.0) *
                 (phys.gamma / (phys.c * phys.k0)) *
                 (phys.gamma / (phys.c * phys.k0));
    for (int i = 0; i < 3; ++i) {
        if (i == static_cast<int>(axis_k)) continue;
        g_c *= phys.dk[i] * phys.c / phys.gamma;
    }
    return ControlParams(eta, tau, epsilon, g_c);
}

GridSpec::GridSpec(double q_min_, double q_max_, double k_min_, double k_max_,
                   int n_q_, int n_k_, QuadRule rule_)
    : q_min(q_min_),
      q_max(q_max_),
      k_min(k_min_),
      k_max(k_max_),
      n_q(n_q_),
      n_k(n_k_),
      rule(rule_) {
    require(std::isfinite(q_min) && std::isfinite(q_max) && q_min < q_max,
            "grid requires q_min < q_max");
    require(std::isfinite(k_min) && std::isfinite(k_max) && k_min < k_max,
            "grid requires k_min < k_max");
    require(n_q >= 8, "grid requires n_q >= 8");
    require(n_k >= 8, "grid requires n_k >= 8");
}

Eigen::ArrayXd GridSpec::q_nodes() const {
    return nodes_1d(q_min, q_max, n_q, rule);
}

Eigen::ArrayXd GridSpec::k_nodes() const {
    return nodes_1d(k_min, k_max, n_k, rule);
}

Eigen::ArrayXd GridSpec::q_weights() const {
    return weights_1d(q_min, q_max, n_q, rule);
}

Eigen::ArrayXd GridSpec::k_weights() const {
    return weights_1d(k_min, k_max, n_k, rule);
}

GridSpec default_grid(const ControlParams& ctrl, int n) {
    require(n >= 8, "default_grid requires n >= 8");
    const double q_ext = 6.0 * std::max(ctrl.eta, 1.0);
    const double k_ext = 50.0 * (1.0 + ctrl.tau);
    return GridSpec(-q_ext, q_ext, -k_ext, k_ext, n, n);
}

}  // namespace photatom
