#pragma once

#include <stdexcept>

#include "photatom/amplitude.hpp"

namespace photatom {

enum class Axis { q, k };

// Conditional slice carries a negligible share of the total probability.
class slice_underflow_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Second moments of the joint density |values|^2 under the grid quadrature.
// All moments self-normalize by the relevant discrete probability mass, so
// they are exactly invariant under rescaling or a global phase of the field.

// Variance of the chosen axis with the partner traced out (single-particle
// momentum spread).
double unconditional_variance(const AmplitudeField& field, Axis axis);

// Variance of the chosen axis along the grid line nearest fixed_value on
// the partner axis (coincidence spread).  The slice must carry more than
// 1e-12 of the total probability.
double conditional_variance(const AmplitudeField& field, Axis axis,
                            double fixed_value);

struct VarianceReport {
    double single_variance;  // unconditional
    double coinc_variance;   // conditional at the fixed partner value
    Axis fixed_axis;         // axis the variances describe
    double fixed_value;      // partner-axis slice position
    double ratio;            // sqrt(single/coinc); > 1 flags entanglement
};

// Ratio of single-particle to coincidence standard deviations along `axis`
// with the partner axis fixed near fixed_value.
VarianceReport ratio_R(const AmplitudeField& field, Axis axis = Axis::q,
                       double fixed_value = 0.0);

// First-order large-eta estimate (eta + sqrt(2/pi)*(1+tau)) / (2*sqrt(tau))
// of the scattered-channel ratio; warns on stderr outside its validity
// domain eta > 1.
double ratio_R_asymptotic(const ControlParams& ctrl);

}  // namespace photatom
