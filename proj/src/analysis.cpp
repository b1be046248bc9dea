#include "photatom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "photatom/amplitude.hpp"
#include "photatom/moments.hpp"
#include "photatom/schmidt.hpp"

namespace photatom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> sorted_unique_positive(std::vector<double> xs,
                                           const char* what) {
    if (xs.empty()) {
        throw std::invalid_argument(std::string(what) + " list is empty");
    }
    for (double x : xs) {
        if (!(std::isfinite(x) && x > 0.0)) {
            throw std::invalid_argument(std::string(what) +
                                        " values must be positive and finite");
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

GridSpec GridPolicy::make_grid(const ControlParams& ctrl) const {
    GridSpec grid = default_grid(ctrl, n);
    const double q_lo = q_range ? q_range->first : grid.q_min;
    const double q_hi = q_range ? q_range->second : grid.q_max;
    const double k_lo = k_range ? k_range->first : grid.k_min;
    const double k_hi = k_range ? k_range->second : grid.k_max;
    return GridSpec(q_lo, q_hi, k_lo, k_hi, n, n, rule);
}

std::string GridPolicy::describe() const {
    std::string text = std::string("photatom ") + kVersion + "; n=" +
                       std::to_string(n) + "; rule=" +
                       (rule == QuadRule::midpoint ? "midpoint" : "trapezoid");
    auto range_text = [](const std::optional<std::pair<double, double>>& r) {
        if (!r) return std::string("auto");
        return "[" + std::to_string(r->first) + "," +
               std::to_string(r->second) + "]";
    };
    text += "; q=" + range_text(q_range) + "; k=" + range_text(k_range);
    return text;
}

SweepTable sweep(const std::vector<double>& etas,
                 const std::vector<double>& taus, Measures measures,
                 const GridPolicy& policy) {
    const std::vector<double> es = sorted_unique_positive(etas, "etas");
    const std::vector<double> ts = sorted_unique_positive(taus, "taus");

    SweepTable table;
    table.provenance = policy.describe();
    table.rows.reserve(es.size() * ts.size());

    for (double eta : es) {
        for (double tau : ts) {
            SweepRow row{eta, tau, kNaN, kNaN, 0, 0, 0.0, 0.0, 0.0, 0.0, ""};
            try {
                const ControlParams ctrl(eta, tau);
                const GridSpec grid = policy.make_grid(ctrl);
                row.n_q = grid.n_q;
                row.n_k = grid.n_k;
                row.q_min = grid.q_min;
                row.q_max = grid.q_max;
                row.k_min = grid.k_min;
                row.k_max = grid.k_max;
                if (measures.ratio || measures.schmidt) {
                    const AmplitudeField field = scattered_field(ctrl, grid);
                    if (measures.ratio) {
                        row.ratio = ratio_R(field).ratio;
                    }
                    if (measures.schmidt) {
                        row.schmidt_K = schmidt_decompose(field, 0).K;
                    }
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

FitResult linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
    const int n = static_cast<int>(xs.size());
    if (n < 3 || ys.size() != xs.size()) {
        throw std::invalid_argument(
            "linear_fit needs >= 3 points with matching lengths");
    }
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw std::invalid_argument("linear_fit inputs must be finite");
        }
    }
    double x_mean = 0.0, y_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= n;
    y_mean /= n;

    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("linear_fit abscissa is degenerate");
    }

    FitResult fit{};
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    fit.n_points = n;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

double epc(double tau, const std::vector<double>& etas,
           const GridPolicy& policy) {
    if (!(std::isfinite(tau) && tau > 0.0)) {
        throw std::invalid_argument("tau must be positive and finite");
    }
    const std::vector<double> es = sorted_unique_positive(etas, "etas");
    if (es.size() < 3) {
        throw std::invalid_argument("epc needs >= 3 eta points");
    }
    for (double eta : es) {
        if (eta < 5.0) {
            throw std::invalid_argument(
                "epc slope fits require every eta >= 5 (linear regime)");
        }
    }

    std::vector<double> scattered_k, baseline_k;
    scattered_k.reserve(es.size());
    baseline_k.reserve(es.size());
    for (double eta : es) {
        const ControlParams ctrl(eta, tau);
        const AmplitudeField field =
            scattered_field(ctrl, policy.make_grid(ctrl));
        scattered_k.push_back(schmidt_decompose(field, 0).K);

        // broadband baseline: unit-width resonance, tau=1 default extents
        const ControlParams base(eta, 1.0);
        const AmplitudeField bare =
            spontaneous_field(eta, policy.make_grid(base));
        baseline_k.push_back(schmidt_decompose(bare, 0).K);
    }

    const FitResult num = linear_fit(es, scattered_k);
    const FitResult den = linear_fit(es, baseline_k);
    if (!(std::abs(den.slope) > 1e-12)) {
        throw std::runtime_error("spontaneous baseline slope is degenerate");
    }
    return num.slope / den.slope;
}

CurveFit epc_curve_fit(const std::vector<double>& taus,
                       const std::vector<double>& epcs) {
    const int n = static_cast<int>(taus.size());
    if (n < 4 || epcs.size() != taus.size()) {
        throw std::invalid_argument(
            "epc_curve_fit needs >= 4 points with matching lengths");
    }
    for (int i = 0; i < n; ++i) {
        if (!(std::isfinite(taus[i]) && taus[i] > 0.0 && taus[i] <= 1.0)) {
            throw std::invalid_argument(
                "epc_curve_fit requires taus in (0, 1]");
        }
        if (!std::isfinite(epcs[i])) {
            throw std::invalid_argument("epc values must be finite");
        }
    }

    // normal equations for y ~ a*u + b with u = 1/tau
    double suu = 0.0, su = 0.0, suy = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = 1.0 / taus[i];
        suu += u * u;
        su += u;
        suy += u * epcs[i];
        sy += epcs[i];
    }
    const double det = suu * n - su * su;
    if (!(std::abs(det) > 1e-9 * std::max(suu * n, 1.0))) {
        throw std::invalid_argument("epc_curve_fit basis is degenerate");
    }

    CurveFit fit{};
    fit.a = (suy * n - su * sy) / det;
    fit.b = (suu * sy - su * suy) / det;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = epcs[i] - (fit.a / taus[i] + fit.b);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace photatom
