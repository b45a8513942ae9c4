#include "zsp/predict.hpp"

#include "zsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zsp {

PredictionParams derive_params(double e_height, const ConstantSet& cs) {
    PredictionParams params;
    params.ctx = make_height_context(e_height);
    params.n_eff = params.ctx.n0 / std::sqrt(12.0 * cs.lambda);
    params.alpha = 1.0 + cs.c_ratio / params.ctx.n0;
    params.constants_used = cs;
    return params;
}

SpacingCurve delta_p(const PredictionParams& params, const SpacingCurve& p1,
                     std::span<const double> grid, bool no_rescale) {
    if (p1.kind != SpacingKind::p1_correction)
        throw std::invalid_argument("delta_p: p1 curve must carry kind p1_correction");
    const double stretch = no_rescale ? 1.0 : params.alpha;
    const CubicSpline spline(p1.grid, p1.values);
    for (double s : grid) {
        const double arg = stretch * s;
        if (arg < spline.min_x() - 1e-12 || arg > spline.max_x() + 1e-12)
            throw std::domain_error("delta_p: rescaled argument leaves the p1 grid span");
    }

    SpacingCurve out;
    out.kind = SpacingKind::delta_p;
    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    const double scale = 1.0 / (params.n_eff * params.n_eff);
    // the pre-check allows 1e-12 of edge rounding; clamp so the spline's own
    // strict span test never sees it
    for (double s : grid)
        out.values.push_back(
            scale * spline(std::clamp(stretch * s, spline.min_x(), spline.max_x())));

    out.meta["e_height"] = params.ctx.e_height;
    out.meta["n_eff"] = params.n_eff;
    out.meta["alpha"] = no_rescale ? 1.0 : params.alpha;
    out.meta["rescaled"] = !no_rescale;
    return out;
}

SpacingCurve predicted_spacing(const PredictionParams& params,
                               const SpacingCurve& p0, const SpacingCurve& p1,
                               std::span<const double> grid) {
    if (p0.kind != SpacingKind::p_asymptotic)
        throw std::invalid_argument("predicted_spacing: p0 curve must carry kind p_asymptotic");
    SpacingCurve correction = delta_p(params, p1, grid);
    const CubicSpline base(p0.grid, p0.values);
    for (double s : grid) {
        if (s < base.min_x() - 1e-12 || s > base.max_x() + 1e-12)
            throw std::domain_error("predicted_spacing: grid leaves the p0 span");
    }

    SpacingCurve out;
    out.kind = SpacingKind::p_finite_n;
    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    for (std::size_t i = 0; i < out.grid.size(); ++i)
        out.values.push_back(base(std::clamp(out.grid[i], base.min_x(), base.max_x()))
                             + correction.values[i]);

    out.meta = correction.meta;
    out.meta["tol"] = 1e-3;
    if (out.grid.size() >= 2) out.meta["step"] = out.grid[1] - out.grid[0];
    return out;
}

} // namespace zsp
