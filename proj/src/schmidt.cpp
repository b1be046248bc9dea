#include "photatom/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "photatom/linalg.hpp"

namespace photatom {

namespace {

void check_normalized(const AmplitudeField& field, const char* what) {
    if (!field.normalized) {
        throw std::invalid_argument(std::string(what) +
                                    " requires a normalized field");
    }
    const double nrm = discrete_norm(field);
    if (std::abs(nrm - 1.0) > 1e-6) {
        throw std::invalid_argument(
            std::string(what) + ": field norm " + std::to_string(nrm) +
            " is not 1 under its own quadrature");
    }
}

// Gauge: rotate each mode pair so the photon mode's largest-magnitude
// sample is real positive; the atom mode absorbs the conjugate phase.
void fix_gauge(Eigen::MatrixXcd& atom_modes, Eigen::MatrixXcd& photon_modes) {
    for (int n = 0; n < photon_modes.cols(); ++n) {
        int peak = 0;
        double best = std::abs(photon_modes(0, n));
        for (int j = 1; j < photon_modes.rows(); ++j) {
            const double mag = std::abs(photon_modes(j, n));
            if (mag > best) {
                best = mag;
                peak = j;
            }
        }
        if (best == 0.0) continue;
        const std::complex<double> phase = photon_modes(peak, n) / best;
        photon_modes.col(n) *= std::conj(phase);
        atom_modes.col(n) *= phase;
    }
}

// Normalizes a raw sigma^2 sequence into (lambdas, K, residue).
void finish_spectrum(SchmidtSpectrum& spectrum, Eigen::ArrayXd raw) {
    for (int i = 0; i < raw.size(); ++i) raw[i] = std::max(raw[i], 0.0);
    double sum = 0.0;
    for (int i = 0; i < raw.size(); ++i) sum += raw[i];
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw std::runtime_error("Schmidt spectrum sum is degenerate");
    }
    spectrum.raw_sum_residue = sum - 1.0;
    spectrum.lambdas = raw / sum;
    double purity = 0.0;
    for (int i = 0; i < spectrum.lambdas.size(); ++i) {
        purity += spectrum.lambdas[i] * spectrum.lambdas[i];
    }
    spectrum.K = 1.0 / purity;
}

}  // namespace

SchmidtSpectrum schmidt_decompose(const AmplitudeField& field, int n_modes) {
    check_normalized(field, "schmidt_decompose");
    const int rank_cap = std::min(field.grid.n_q, field.grid.n_k);
    if (n_modes < 0 || n_modes > rank_cap) {
        throw std::invalid_argument(
            "n_modes must lie in [0, min(n_q, n_k)]");
    }

    const Eigen::ArrayXd wq = field.grid.q_weights();
    const Eigen::ArrayXd wk = field.grid.k_weights();
    const Eigen::ArrayXd sq = wq.sqrt();
    const Eigen::ArrayXd sk = wk.sqrt();

    Eigen::MatrixXcd m(field.grid.n_q, field.grid.n_k);
    for (int j = 0; j < field.grid.n_k; ++j) {
        for (int i = 0; i < field.grid.n_q; ++i) {
            m(i, j) = sq[i] * field.values(i, j) * sk[j];
        }
    }

    const SvdResult svd = complex_svd(m, n_modes > 0);

    SchmidtSpectrum spectrum{field.grid, {}, 0.0, 0.0, {}, {}};
    finish_spectrum(spectrum, svd.sigma.array().square());

    if (n_modes > 0) {
        spectrum.atom_modes.resize(field.grid.n_q, n_modes);
        spectrum.photon_modes.resize(field.grid.n_k, n_modes);
        for (int n = 0; n < n_modes; ++n) {
            for (int i = 0; i < field.grid.n_q; ++i) {
                spectrum.atom_modes(i, n) = svd.u(i, n) / sq[i];
            }
            for (int j = 0; j < field.grid.n_k; ++j) {
                // rows of V^H are already the conjugated right vectors,
                // i.e. the photon mode functions themselves
                spectrum.photon_modes(j, n) = svd.vh(n, j) / sk[j];
            }
        }
        fix_gauge(spectrum.atom_modes, spectrum.photon_modes);
    }
    return spectrum;
}

double schmidt_number(const SchmidtSpectrum& spectrum) {
    double purity = 0.0;
    for (int i = 0; i < spectrum.lambdas.size(); ++i) {
        purity += spectrum.lambdas[i] * spectrum.lambdas[i];
    }
    if (!(purity > 0.0)) {
        throw std::invalid_argument("spectrum carries no weight");
    }
    return 1.0 / purity;
}

AmplitudeField reconstruct(const SchmidtSpectrum& spectrum, int n_terms) {
    const int stored = static_cast<int>(spectrum.atom_modes.cols());
    if (n_terms < 0 || n_terms > stored) {
        throw std::invalid_argument(
            "n_terms exceeds the stored mode count");
    }
    AmplitudeField field{spectrum.grid,
                         Eigen::MatrixXcd::Zero(spectrum.grid.n_q,
                                                spectrum.grid.n_k),
                         FieldKind::synthetic, false};
    for (int n = 0; n < n_terms; ++n) {
        const double weight = std::sqrt(spectrum.lambdas[n]);
        field.values.noalias() += weight * spectrum.atom_modes.col(n) *
                                  spectrum.photon_modes.col(n).transpose();
    }
    return field;
}

Eigen::MatrixXcd atom_modes_from_photon(const AmplitudeField& field,
                                        const SchmidtSpectrum& spectrum) {
    check_normalized(field, "atom_modes_from_photon");
    const int stored = static_cast<int>(spectrum.photon_modes.cols());
    const Eigen::ArrayXd wk = field.grid.k_weights();
    if (spectrum.photon_modes.rows() != field.grid.n_k) {
        throw std::invalid_argument(
            "spectrum modes do not match the field grid");
    }

    Eigen::MatrixXcd result(field.grid.n_q, stored);
    for (int n = 0; n < stored; ++n) {
        if (!(spectrum.lambdas[n] >= 1e-12)) {
            throw lambda_underflow_error(
                "mode " + std::to_string(n) + " weight " +
                std::to_string(spectrum.lambdas[n]) + " is below 1e-12");
        }
        const double scale = 1.0 / std::sqrt(spectrum.lambdas[n]);
        for (int i = 0; i < field.grid.n_q; ++i) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < field.grid.n_k; ++j) {
                acc += wk[j] * field.values(i, j) *
                       std::conj(spectrum.photon_modes(j, n));
            }
            result(i, n) = scale * acc;
        }
    }
    return result;
}

SchmidtSpectrum oracle_schmidt(const AmplitudeField& field) {
    check_normalized(field, "oracle_schmidt");
    if (std::max(field.grid.n_q, field.grid.n_k) > 256) {
        throw std::invalid_argument(
            "oracle_schmidt is a brute-force cross-check limited to grids "
            "of at most 256 nodes per axis");
    }

    const Eigen::ArrayXd wq = field.grid.q_weights();
    const Eigen::ArrayXd wk = field.grid.k_weights();
    const int nk = field.grid.n_k;

    // single-particle (photon) density matrix, atom traced out
    Eigen::MatrixXcd rho(nk, nk);
    for (int j = 0; j < nk; ++j) {
        for (int l = 0; l < nk; ++l) {
            std::complex<double> acc = 0.0;
            for (int i = 0; i < field.grid.n_q; ++i) {
                acc += wq[i] * field.values(i, j) *
                       std::conj(field.values(i, l));
            }
            rho(j, l) = acc;
        }
    }

    // weight-symmetrized kernel sqrt(wk_j) rho_jl sqrt(wk_l) shares the
    // spectrum of the weighted-SVD route
    Eigen::MatrixXcd b(nk, nk);
    const Eigen::ArrayXd sk = wk.sqrt();
    for (int j = 0; j < nk; ++j) {
        for (int l = 0; l < nk; ++l) {
            b(j, l) = sk[j] * rho(j, l) * sk[l];
        }
    }
    b = 0.5 * (b + b.adjoint().eval());

    const HermitianEig eig = jacobi_hermitian(b);

    SchmidtSpectrum spectrum{field.grid, {}, 0.0, 0.0, {}, {}};
    finish_spectrum(spectrum, eig.values.array());

    // every eigenvector is a weighted photon mode; keep those carrying
    // usable weight as continuum mode functions
    int stored = 0;
    while (stored < nk && spectrum.lambdas[stored] >= 1e-12) ++stored;
    spectrum.photon_modes.resize(nk, stored);
    for (int n = 0; n < stored; ++n) {
        for (int j = 0; j < nk; ++j) {
            spectrum.photon_modes(j, n) = eig.vectors(j, n) / sk[j];
        }
    }
    // project the joint amplitude on each photon mode to recover the
    // paired atom mode
    spectrum.atom_modes = atom_modes_from_photon(field, spectrum);
    fix_gauge(spectrum.atom_modes, spectrum.photon_modes);
    return spectrum;
}

int count_peaks(const Eigen::VectorXcd& mode, double rel_threshold) {
    const int n = static_cast<int>(mode.size());
    if (n < 32) {
        throw std::invalid_argument("count_peaks needs >= 32 samples");
    }
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) {
        throw std::invalid_argument("rel_threshold must lie in (0, 1)");
    }

    Eigen::ArrayXd density(n);
    for (int i = 0; i < n; ++i) density[i] = std::norm(mode[i]);

    Eigen::ArrayXd smooth = density;
    for (int i = 1; i + 1 < n; ++i) {
        smooth[i] = (density[i - 1] + density[i] + density[i + 1]) / 3.0;
    }

    const double floor = rel_threshold * smooth.maxCoeff();
    int count = 0;
    int i = 1;
    while (i + 1 < n) {
        int j = i;
        while (j + 1 < n - 1 && smooth[j + 1] == smooth[j]) ++j;
        if (smooth[i - 1] < smooth[i] && smooth[j + 1] < smooth[j] &&
            smooth[i] > floor) {
            ++count;
        }
        i = j + 1;
    }
    return count;
}

}  // namespace photatom
