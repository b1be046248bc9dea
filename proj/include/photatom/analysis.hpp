#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "photatom/params.hpp"

namespace photatom {

// How sweep-style commands build the per-point grid: default extents scale
// with each point's (eta, tau) unless explicit ranges are given.
struct GridPolicy {
    int n = 1000;
    QuadRule rule = QuadRule::midpoint;
    std::optional<std::pair<double, double>> q_range;
    std::optional<std::pair<double, double>> k_range;

    GridSpec make_grid(const ControlParams& ctrl) const;
    std::string describe() const;
};

// Which measures a sweep evaluates per point.
struct Measures {
    bool ratio = true;
    bool schmidt = true;
};

struct SweepRow {
    double eta;
    double tau;
    double ratio;      // NaN when not requested or failed
    double schmidt_K;  // NaN when not requested or failed
    int n_q, n_k;
    double q_min, q_max, k_min, k_max;
    std::string error;  // empty on success
};

struct SweepTable {
    std::vector<SweepRow> rows;  // lexicographic in (eta, tau), unique
    std::string provenance;      // code version plus grid policy
};

// Evaluates the requested measures for the scattered channel over the
// cartesian product of the parameter lists.  Per-point failures are
// recorded in the row's error column; the sweep itself never aborts.
SweepTable sweep(const std::vector<double>& etas,
                 const std::vector<double>& taus, Measures measures,
                 const GridPolicy& policy);

struct FitResult {
    double slope;
    double intercept;
    double rms_residual;
    int n_points;
};

// Ordinary least squares line through (xs, ys); needs >= 3 points and a
// non-degenerate abscissa.
FitResult linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

// Entanglement gain of coherent pumping at linewidth ratio tau: the fitted
// K(eta) slope of the scattered channel divided by the fitted K(eta) slope
// of the broadband spontaneous baseline, both over the same eta list.
// Slopes live in the linear regime, so every eta must be >= 5.  The
// baseline's resonance factor has unit width, so its grid uses the tau=1
// default extents.
double epc(double tau, const std::vector<double>& etas,
           const GridPolicy& policy);

struct CurveFit {
    double a;  // coefficient of 1/tau
    double b;  // constant term
    double rms_residual;
};

// Least squares fit of epcs ~ a/tau + b on the basis {1/tau, 1}; needs
// >= 4 points with taus in (0, 1].
CurveFit epc_curve_fit(const std::vector<double>& taus,
                       const std::vector<double>& epcs);

}  // namespace photatom
