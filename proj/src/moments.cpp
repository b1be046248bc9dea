#include "photatom/moments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace photatom {

namespace {

struct MarginalDensity {
    Eigen::ArrayXd coords;   // nodes of the measured axis
    Eigen::ArrayXd weights;  // quadrature weights of the measured axis
    Eigen::ArrayXd density;  // per-node marginal |A|^2, partner traced out
};

// Marginal density along `axis` with the partner axis integrated out.
MarginalDensity marginal(const AmplitudeField& field, Axis axis) {
    MarginalDensity m;
    if (axis == Axis::q) {
        m.coords = field.grid.q_nodes();
        m.weights = field.grid.q_weights();
        const Eigen::ArrayXd wk = field.grid.k_weights();
        m.density.resize(field.grid.n_q);
        for (int i = 0; i < field.grid.n_q; ++i) {
            double acc = 0.0;
            for (int j = 0; j < field.grid.n_k; ++j) {
                acc += wk[j] * std::norm(field.values(i, j));
            }
            m.density[i] = acc;
        }
    } else {
        m.coords = field.grid.k_nodes();
        m.weights = field.grid.k_weights();
        const Eigen::ArrayXd wq = field.grid.q_weights();
        m.density.resize(field.grid.n_k);
        for (int j = 0; j < field.grid.n_k; ++j) {
            double acc = 0.0;
            for (int i = 0; i < field.grid.n_q; ++i) {
                acc += wq[i] * std::norm(field.values(i, j));
            }
            m.density[j] = acc;
        }
    }
    return m;
}

// Self-normalized variance of a sampled 1D density; two-pass for stability.
double density_variance(const MarginalDensity& m, const char* what) {
    const int n = static_cast<int>(m.density.size());
    double mass = 0.0;
    for (int i = 0; i < n; ++i) mass += m.weights[i] * m.density[i];
    if (!(mass > 1e-300) || !std::isfinite(mass)) {
        throw std::runtime_error(std::string("degenerate density in ") + what);
    }
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        mean += m.weights[i] * m.coords[i] * m.density[i];
    }
    mean /= mass;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = m.coords[i] - mean;
        var += m.weights[i] * d * d * m.density[i];
    }
    return var / mass;
}

int nearest_node(const Eigen::ArrayXd& coords, double value) {
    int best = 0;
    double best_dist = std::abs(coords[0] - value);
    for (int i = 1; i < static_cast<int>(coords.size()); ++i) {
        const double dist = std::abs(coords[i] - value);
        if (dist < best_dist) {
            best = i;
            best_dist = dist;
        }
    }
    return best;
}

}  // namespace

double unconditional_variance(const AmplitudeField& field, Axis axis) {
    return density_variance(marginal(field, axis), "unconditional_variance");
}

double conditional_variance(const AmplitudeField& field, Axis axis,
                            double fixed_value) {
    const bool slice_on_k = (axis == Axis::q);
    const double lo = slice_on_k ? field.grid.k_min : field.grid.q_min;
    const double hi = slice_on_k ? field.grid.k_max : field.grid.q_max;
    if (!(std::isfinite(fixed_value) && fixed_value >= lo &&
          fixed_value <= hi)) {
        throw std::invalid_argument(
            "fixed_value outside the partner axis grid range");
    }

    MarginalDensity m;
    const int j = nearest_node(
        slice_on_k ? field.grid.k_nodes() : field.grid.q_nodes(), fixed_value);
    if (slice_on_k) {
        m.coords = field.grid.q_nodes();
        m.weights = field.grid.q_weights();
        m.density.resize(field.grid.n_q);
        for (int i = 0; i < field.grid.n_q; ++i) {
            m.density[i] = std::norm(field.values(i, j));
        }
    } else {
        m.coords = field.grid.k_nodes();
        m.weights = field.grid.k_weights();
        m.density.resize(field.grid.n_k);
        for (int i = 0; i < field.grid.n_k; ++i) {
            m.density[i] = std::norm(field.values(j, i));
        }
    }

    // reject slices that carry a negligible share of the joint probability
    const double slice_w = slice_on_k ? field.grid.k_weights()[j]
                                      : field.grid.q_weights()[j];
    double slice_mass = 0.0;
    for (int i = 0; i < static_cast<int>(m.density.size()); ++i) {
        slice_mass += m.weights[i] * m.density[i];
    }
    double total = 0.0;
    {
        const Eigen::ArrayXd wq = field.grid.q_weights();
        const Eigen::ArrayXd wk = field.grid.k_weights();
        for (int i = 0; i < field.grid.n_q; ++i) {
            double row = 0.0;
            for (int jj = 0; jj < field.grid.n_k; ++jj) {
                row += wk[jj] * std::norm(field.values(i, jj));
            }
            total += wq[i] * row;
        }
    }
    if (!(slice_w * slice_mass > 1e-12 * total)) {
        throw slice_underflow_error(
            "conditional slice at " + std::to_string(fixed_value) +
            " carries <= 1e-12 of the total probability");
    }
    return density_variance(m, "conditional_variance");
}

VarianceReport ratio_R(const AmplitudeField& field, Axis axis,
                       double fixed_value) {
    VarianceReport report{};
    report.fixed_axis = axis;
    report.fixed_value = fixed_value;
    report.single_variance = unconditional_variance(field, axis);
    report.coinc_variance = conditional_variance(field, axis, fixed_value);
    report.ratio = std::sqrt(report.single_variance / report.coinc_variance);
    return report;
}

double ratio_R_asymptotic(const ControlParams& ctrl) {
    if (ctrl.eta <= 1.0) {
        std::fprintf(stderr,
                     "warning: asymptotic ratio evaluated outside its "
                     "validity domain (eta = %g <= 1)\n",
                     ctrl.eta);
    }
    return (ctrl.eta + std::sqrt(2.0 / std::numbers::pi) * (1.0 + ctrl.tau)) /
           (2.0 * std::sqrt(ctrl.tau));
}

}  // namespace photatom
