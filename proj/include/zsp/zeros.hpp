/// Zero-table ingestion, local unfolding, spacing histograms, empirical
/// pair correlation, and residuals against predicted curves.

#pragma once

#include "zsp/curves.hpp"
#include "zsp/predict.hpp"

#include <span>
#include <string>
#include <vector>

namespace zsp {

/// Ordinates are stored relative to `offset` and never materialized as
/// offset + u: at heights ~1e15 the sum would round consecutive gaps into
/// half-ulp garbage, while differences of the stored values stay exact.
/// `offset` is 0 for plain files.
struct ZeroDataset {
    std::vector<double> ordinates;
    double offset = 0.0;
    double window_center = 0.0; // midpoint of the absolute ordinate range
    long long count = 0;
};

enum class ZeroFormat { plain, offset_header };

/// plain: one ascending decimal ordinate per line. offset_header: first line
/// "# offset <decimal>", then per-line offsets relative to that base.
/// Unparseable text throws ParseError and non-monotone data DataError, each
/// with the 1-based line number; a missing file throws
/// std::invalid_argument.
ZeroDataset load_zeros(const std::string& path, ZeroFormat format);

/// Consecutive spacings unfolded by the local density:
/// s_n = (t_{n+1} - t_n) * rho_bar(t_n), rho_bar(t) = log(t/2pi)/(2pi).
/// count < 2 or any ordinate at or below 2pi throws std::domain_error.
std::vector<double> unfold(const ZeroDataset& ds);

/// Histogram bins: nbins equal cells on [lo, hi).
struct BinSpec {
    double lo = 0.0;
    double hi = 4.0;
    int nbins = 80;
};

/// Density-normalized histogram over the in-range spacings, grid at bin
/// centers, per-bin error sqrt(count)/(total * width). Fewer than 100
/// spacings throws std::invalid_argument.
SpacingCurve spacing_histogram(std::span<const double> spacings, const BinSpec& bins);

/// Pair-counting estimator of R2 on unfolded positions (cumulative sums of
/// the unfolded spacings), edge-corrected by counting only left endpoints
/// that leave room for each bin's upper edge. Needs count >= 1000
/// (std::invalid_argument).
CorrelationCurve empirical_r2(const ZeroDataset& ds, const PredictionParams& params,
                              const BinSpec& bins);

/// Bundle of empirical statistics for one dataset/window.
struct EmpiricalStats {
    SpacingCurve spacing_hist;
    CorrelationCurve r2_hist;
    PredictionParams params;
};

/// Runs unfold + histogram + pair correlation in one pass.
EmpiricalStats analyze(const ZeroDataset& ds, const PredictionParams& params,
                       const BinSpec& bins);

/// Empirical spacing histogram minus the predicted curve, resampled onto the
/// histogram grid by cubic spline; error bars carried over from the
/// empirical side. Histogram grid outside the predicted span throws
/// std::domain_error.
SpacingCurve residuals(const EmpiricalStats& empirical, const SpacingCurve& predicted);

} // namespace zsp
