#include "photatom/amplitude.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photatom {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

AmplitudeField make_field(const GridSpec& grid, FieldKind kind) {
    AmplitudeField field{grid, Eigen::MatrixXcd(grid.n_q, grid.n_k), kind,
                         false};
    return field;
}

}  // namespace

double discrete_norm(const AmplitudeField& field) {
    const Eigen::ArrayXd wq = field.grid.q_weights();
    const Eigen::ArrayXd wk = field.grid.k_weights();
    double total = 0.0;
    for (int i = 0; i < field.grid.n_q; ++i) {
        double row = 0.0;
        for (int j = 0; j < field.grid.n_k; ++j) {
            row += wk[j] * std::norm(field.values(i, j));
        }
        total += wq[i] * row;
    }
    return std::sqrt(total);
}

void renormalize(AmplitudeField& field) {
    const double nrm = discrete_norm(field);
    if (!(nrm > 1e-150) || !std::isfinite(nrm)) {
        throw std::runtime_error("cannot renormalize a degenerate field");
    }
    field.values /= nrm;
    field.normalized = true;
}

double scattered_norm_constant(const ControlParams& ctrl) {
    const double pi = std::numbers::pi;
    return std::sqrt(std::sqrt(2.0) * (1.0 + ctrl.tau) /
                     (std::pow(pi, 1.5) * ctrl.tau * ctrl.eta));
}

std::complex<double> scattered_point(const ControlParams& ctrl, double dq,
                                     double dk) {
    const double s = dq + dk;
    const std::complex<double> atom_pole(s + ctrl.epsilon, 1.0);
    const std::complex<double> photon_pole(s / ctrl.tau, 1.0);
    const double envelope = std::exp(-(dq / ctrl.eta) * (dq / ctrl.eta));
    return scattered_norm_constant(ctrl) * envelope / (atom_pole * photon_pole);
}

AmplitudeField scattered_field(const ControlParams& ctrl,
                               const GridSpec& grid) {
    AmplitudeField field = make_field(grid, FieldKind::scattered);
    const Eigen::ArrayXd q = grid.q_nodes();
    const Eigen::ArrayXd k = grid.k_nodes();
    const double norm_const = scattered_norm_constant(ctrl);
    for (int i = 0; i < grid.n_q; ++i) {
        const double envelope =
            norm_const * std::exp(-(q[i] / ctrl.eta) * (q[i] / ctrl.eta));
        for (int j = 0; j < grid.n_k; ++j) {
            const double s = q[i] + k[j];
            const std::complex<double> atom_pole(s + ctrl.epsilon, 1.0);
            const std::complex<double> photon_pole(s / ctrl.tau, 1.0);
            field.values(i, j) = envelope / (atom_pole * photon_pole);
        }
    }
    renormalize(field);
    return field;
}

AmplitudeField spontaneous_field(double eta, const GridSpec& grid) {
    if (!(std::isfinite(eta) && eta > 0.0)) {
        throw std::invalid_argument("eta must be positive and finite");
    }
    AmplitudeField field = make_field(grid, FieldKind::spontaneous);
    const Eigen::ArrayXd q = grid.q_nodes();
    const Eigen::ArrayXd k = grid.k_nodes();
    const double pi = std::numbers::pi;
    const double norm_const =
        std::sqrt(std::sqrt(2.0) / (std::pow(pi, 1.5) * eta));
    for (int i = 0; i < grid.n_q; ++i) {
        const double envelope =
            norm_const * std::exp(-(q[i] / eta) * (q[i] / eta));
        for (int j = 0; j < grid.n_k; ++j) {
            const std::complex<double> pole(q[i] + k[j], 1.0);
            field.values(i, j) = envelope / pole;
        }
    }
    renormalize(field);
    return field;
}

AmplitudeField transmitted_field(double eta, const ControlParams& ctrl,
                                 const GridSpec& grid) {
    if (!(std::isfinite(eta) && eta > 0.0)) {
        throw std::invalid_argument("eta must be positive and finite");
    }
    AmplitudeField field = make_field(grid, FieldKind::transmitted);
    const Eigen::ArrayXd q = grid.q_nodes();
    const Eigen::ArrayXd k = grid.k_nodes();
    // spectral amplitude of the incident wavepacket, per detuning column
    Eigen::VectorXcd spectrum(grid.n_k);
    for (int j = 0; j < grid.n_k; ++j) {
        spectrum[j] = 1.0 / (1.0 + kImag * (k[j] / ctrl.tau));
    }
    for (int i = 0; i < grid.n_q; ++i) {
        const double envelope = std::exp(-(q[i] / eta) * (q[i] / eta));
        for (int j = 0; j < grid.n_k; ++j) {
            const std::complex<double> resonance =
                1.0 - kImag * (q[i] + k[j] + ctrl.epsilon);
            field.values(i, j) =
                envelope * spectrum[j] * (-1.0 + ctrl.g_c / resonance);
        }
    }
    renormalize(field);
    return field;
}

}  // namespace photatom
