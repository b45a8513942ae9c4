/// The central prediction: effective dimension N_eff = n0/sqrt(12 Lambda),
/// rescaling factor alpha = 1 + C/n0, and the finite-height spacing
/// correction delta_p(s) = p_1(alpha s) / N_eff^2.

#pragma once

#include "zsp/bk.hpp"
#include "zsp/curves.hpp"

#include <span>

namespace zsp {

/// Per-height derived quantities. n_eff < n0 always (12 Lambda > 1).
struct PredictionParams {
    HeightContext ctx;
    double n_eff = 0.0;
    double alpha = 0.0;
    ConstantSet constants_used;
};

/// Derives all parameters at height e. e <= 2pi throws
/// std::invalid_argument.
PredictionParams derive_params(double e_height, const ConstantSet& cs);

/// delta_p on the grid: cubic-spline interpolation of p1 at alpha*s, scaled
/// by 1/n_eff^2. With no_rescale the argument stays s (the uncorrected
/// variant). p1 must have kind p1_correction (std::invalid_argument) and
/// alpha*max(grid) must stay inside p1's grid span (std::domain_error).
SpacingCurve delta_p(const PredictionParams& params, const SpacingCurve& p1,
                     std::span<const double> grid, bool no_rescale = false);

/// p0 + delta_p on the grid: the predicted spacing density at the given
/// height.
SpacingCurve predicted_spacing(const PredictionParams& params,
                               const SpacingCurve& p0, const SpacingCurve& p1,
                               std::span<const double> grid);

} // namespace zsp
