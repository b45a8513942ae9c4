#include "zsp/zeros.hpp"

#include "zsp/errors.hpp"
#include "zsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double local_density(double t) { return std::log(t / kTwoPi) / kTwoPi; }

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

double parse_ordinate(const std::string& line, long long line_no) {
    const char* begin = line.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin)
        throw ParseError("not a decimal ordinate: '" + line + "'", line_no);
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (*end != '\0')
        throw ParseError("trailing junk after ordinate: '" + line + "'", line_no);
    if (!std::isfinite(value))
        throw ParseError("ordinate is not finite", line_no);
    return value;
}

void check_bins(const BinSpec& bins) {
    if (bins.nbins < 1 || !(bins.hi > bins.lo))
        throw std::invalid_argument("histogram bins: need nbins >= 1 and hi > lo");
}

} // namespace

ZeroDataset load_zeros(const std::string& path, ZeroFormat format) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_zeros: cannot open '" + path + "'");

    ZeroDataset ds;
    std::string line;
    long long line_no = 0;
    bool header_seen = false;
    long long prev_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (format == ZeroFormat::offset_header && !header_seen) {
            double off = 0.0;
            if (std::sscanf(line.c_str(), "# offset %lf", &off) != 1)
                throw ParseError("expected '# offset <decimal>' header", line_no);
            if (!std::isfinite(off) || off < 0.0)
                throw ParseError("offset must be a finite non-negative decimal", line_no);
            ds.offset = off;
            header_seen = true;
            continue;
        }
        const double u = parse_ordinate(line, line_no);
        if (!ds.ordinates.empty() && u <= ds.ordinates.back())
            throw DataError("ordinates must ascend strictly", line_no);
        ds.ordinates.push_back(u);
        prev_line = line_no;
    }
    (void)prev_line;
    if (format == ZeroFormat::offset_header && !header_seen)
        throw ParseError("file ended before the '# offset' header", line_no == 0 ? 1 : line_no);
    if (ds.ordinates.empty())
        throw DataError("file holds no ordinates", line_no == 0 ? 1 : line_no);

    ds.count = static_cast<long long>(ds.ordinates.size());
    ds.window_center = ds.offset + 0.5 * (ds.ordinates.front() + ds.ordinates.back());
    return ds;
}

std::vector<double> unfold(const ZeroDataset& ds) {
    if (ds.count < 2) throw std::domain_error("unfold: need at least two ordinates");
    std::vector<double> spacings;
    spacings.reserve(ds.ordinates.size() - 1);
    for (std::size_t i = 0; i + 1 < ds.ordinates.size(); ++i) {
        const double t = ds.offset + ds.ordinates[i];
        if (!(t > kTwoPi))
            throw std::domain_error("unfold: ordinate at or below 2*pi has no local density");
        spacings.push_back((ds.ordinates[i + 1] - ds.ordinates[i]) * local_density(t));
    }
    return spacings;
}

SpacingCurve spacing_histogram(std::span<const double> spacings, const BinSpec& bins) {
    if (spacings.size() < 100)
        throw std::invalid_argument("spacing_histogram: need at least 100 spacings");
    check_bins(bins);

    const double width = (bins.hi - bins.lo) / bins.nbins;
    std::vector<long long> counts(static_cast<std::size_t>(bins.nbins), 0);
    long long in_range = 0;
    for (double s : spacings) {
        if (s < bins.lo || s >= bins.hi) continue;
        auto idx = static_cast<std::size_t>((s - bins.lo) / width);
        if (idx >= counts.size()) idx = counts.size() - 1; // roundoff at the top edge
        ++counts[idx];
        ++in_range;
    }
    if (in_range == 0)
        throw std::invalid_argument("spacing_histogram: no spacings fall inside [lo, hi)");

    SpacingCurve curve;
    curve.kind = SpacingKind::empirical;
    const double norm = 1.0 / (static_cast<double>(in_range) * width);
    for (int b = 0; b < bins.nbins; ++b) {
        curve.grid.push_back(bins.lo + (b + 0.5) * width);
        curve.values.push_back(static_cast<double>(counts[b]) * norm);
        curve.errors.push_back(std::sqrt(static_cast<double>(counts[b])) * norm);
    }
    curve.meta["lo"] = bins.lo;
    curve.meta["hi"] = bins.hi;
    curve.meta["nbins"] = bins.nbins;
    curve.meta["in_range"] = in_range;
    curve.meta["total"] = static_cast<long long>(spacings.size());
    return curve;
}

CorrelationCurve empirical_r2(const ZeroDataset& ds, const PredictionParams& params,
                              const BinSpec& bins) {
    if (ds.count < 1000)
        throw std::invalid_argument("empirical_r2: need at least 1000 ordinates");
    check_bins(bins);

    // Unfolded positions: cumulative sums of the unfolded spacings, so the
    // process has unit mean density by construction.
    const std::vector<double> spacings = unfold(ds);
    std::vector<double> pos(spacings.size() + 1);
    pos[0] = 0.0;
    for (std::size_t i = 0; i < spacings.size(); ++i) pos[i + 1] = pos[i] + spacings[i];
    const double top = pos.back();

    const double width = (bins.hi - bins.lo) / bins.nbins;
    std::vector<long long> pairs(static_cast<std::size_t>(bins.nbins), 0);
    std::vector<double> eligible(static_cast<std::size_t>(bins.nbins), 0.0);

    // Left endpoints are eligible for a bin only when the bin's upper edge
    // still fits before the end of the window; counting pairs from eligible
    // endpoints only keeps the estimator unbiased at the boundary.
    for (int b = 0; b < bins.nbins; ++b) {
        const double edge = bins.lo + (b + 1) * width;
        const auto it = std::upper_bound(pos.begin(), pos.end(), top - edge);
        eligible[static_cast<std::size_t>(b)] =
            static_cast<double>(std::distance(pos.begin(), it));
    }

    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double d = pos[j] - pos[i];
            if (d >= bins.hi) break;
            if (d < bins.lo) continue;
            const auto b = static_cast<std::size_t>((d - bins.lo) / width);
            if (b >= pairs.size()) continue;
            const double edge = bins.lo + (static_cast<double>(b) + 1.0) * width;
            if (pos[i] <= top - edge) ++pairs[b];
        }
    }

    CorrelationCurve curve;
    curve.origin = CorrelationOrigin::empirical;
    for (int b = 0; b < bins.nbins; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        const double denom = std::max(eligible[bi], 1.0) * width;
        curve.grid.push_back(bins.lo + (b + 0.5) * width);
        curve.values.push_back(static_cast<double>(pairs[bi]) / denom);
        curve.errors.push_back(std::sqrt(static_cast<double>(pairs[bi])) / denom);
    }
    curve.meta["lo"] = bins.lo;
    curve.meta["hi"] = bins.hi;
    curve.meta["nbins"] = bins.nbins;
    curve.meta["count"] = ds.count;
    curve.meta["e_height"] = params.ctx.e_height;
    curve.meta["estimator"] = "edge-corrected directed pair counts";
    return curve;
}

EmpiricalStats analyze(const ZeroDataset& ds, const PredictionParams& params,
                       const BinSpec& bins) {
    EmpiricalStats stats;
    stats.params = params;
    stats.spacing_hist = spacing_histogram(unfold(ds), bins);
    stats.r2_hist = empirical_r2(ds, params, bins);
    return stats;
}

SpacingCurve residuals(const EmpiricalStats& empirical, const SpacingCurve& predicted) {
    const SpacingCurve& hist = empirical.spacing_hist;
    const CubicSpline spline(predicted.grid, predicted.values);
    for (double s : hist.grid) {
        if (s < spline.min_x() - 1e-12 || s > spline.max_x() + 1e-12)
            throw std::domain_error("residuals: histogram grid leaves the predicted span");
    }

    SpacingCurve out;
    out.kind = SpacingKind::delta_p;
    out.grid = hist.grid;
    out.values.reserve(hist.grid.size());
    for (std::size_t i = 0; i < hist.grid.size(); ++i)
        out.values.push_back(
            hist.values[i]
            - spline(std::clamp(hist.grid[i], spline.min_x(), spline.max_x())));
    out.errors = hist.errors;
    out.meta["role"] = "residual";
    out.meta["predicted_kind"] = to_string(predicted.kind);
    return out;
}

} // namespace zsp
