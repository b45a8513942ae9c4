#include "zsp/extract.hpp"

#include "zsp/cue.hpp"
#include "zsp/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace zsp {

namespace {

void check_sequence(std::span<const long long> n_sequence, std::size_t minimum) {
    if (n_sequence.size() < minimum)
        throw std::invalid_argument("extract: need more dimensions in the N-sequence");
    for (std::size_t i = 0; i < n_sequence.size(); ++i) {
        if (n_sequence[i] < 8)
            throw std::invalid_argument("extract: dimensions below 8 are too contaminated");
        if (i > 0 && n_sequence[i] <= n_sequence[i - 1])
            throw std::invalid_argument("extract: N-sequence must ascend strictly");
    }
}

struct DensityTable {
    std::vector<double> inv_n2;               // extrapolation abscissae 1/N^2
    std::vector<SpacingCurve> curves;         // p_N per sequence entry
};

DensityTable densities(std::span<const long long> n_sequence, std::span<const double> grid) {
    DensityTable table;
    for (long long n : n_sequence) {
        const double nd = static_cast<double>(n);
        table.inv_n2.push_back(1.0 / (nd * nd));
        table.curves.push_back(spacing_density(KernelSpec{n}, grid));
    }
    return table;
}

// Extrapolation to 1/N^2 = 0 at one grid point, with the sequence of
// prefix estimates for self-consistency measurements.
SpacingCurve extrapolate_p0(const DensityTable& table, std::span<const double> grid,
                            double* residual_out) {
    SpacingCurve p0;
    p0.kind = SpacingKind::p_asymptotic;
    p0.grid.assign(grid.begin(), grid.end());
    p0.values.reserve(grid.size());

    double residual = 0.0;
    std::vector<double> ys(table.curves.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < table.curves.size(); ++k) ys[k] = table.curves[k].values[i];
        const auto estimates = neville_prefix_estimates(table.inv_n2, ys);
        p0.values.push_back(estimates.back());
        if (estimates.size() >= 2)
            residual = std::max(residual,
                                std::abs(estimates.back() - estimates[estimates.size() - 2]));
    }
    if (residual_out) *residual_out = residual;
    p0.meta["residual_estimate"] = residual;
    p0.meta["tol"] = 1e-6;
    if (grid.size() >= 2) p0.meta["step"] = grid[1] - grid[0];
    return p0;
}

} // namespace

SpacingCurve extract_p0(std::span<const long long> n_sequence, std::span<const double> grid) {
    check_sequence(n_sequence, 2);
    const DensityTable table = densities(n_sequence, grid);
    SpacingCurve p0 = extrapolate_p0(table, grid, nullptr);
    p0.meta["n_sequence"] = std::vector<long long>(n_sequence.begin(), n_sequence.end());
    return p0;
}

ExtractionReport extract_p1(std::span<const long long> n_sequence, std::span<const double> grid) {
    check_sequence(n_sequence, 3);
    const DensityTable table = densities(n_sequence, grid);

    ExtractionReport report;
    report.n_sequence.assign(n_sequence.begin(), n_sequence.end());
    report.p0 = extrapolate_p0(table, grid, nullptr);
    report.p0.meta["n_sequence"] = report.n_sequence;

    report.p1.kind = SpacingKind::p1_correction;
    report.p1.grid.assign(grid.begin(), grid.end());
    report.p1.values.reserve(grid.size());
    report.p1.errors.reserve(grid.size());

    // p1 = limit of N^2 (p_N - p0) with the residual N^-2 sub-correction
    // eliminated by a second extrapolation pass.
    double consistency = 0.0;
    std::vector<double> gs(table.curves.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < table.curves.size(); ++k) {
            const double n2 = 1.0 / table.inv_n2[k];
            gs[k] = n2 * (table.curves[k].values[i] - report.p0.values[i]);
        }
        const auto estimates = neville_prefix_estimates(table.inv_n2, gs);
        const double last = estimates.back();
        const double prev = estimates[estimates.size() - 2];
        report.p1.values.push_back(last);
        report.p1.errors.push_back(std::abs(last - prev));
        consistency = std::max(consistency, std::abs(last - prev));
    }
    report.consistency_error = consistency;
    report.p1.meta["n_sequence"] = report.n_sequence;
    report.p1.meta["consistency_error"] = consistency;
    report.p1.meta["tol"] = 1e-3;
    if (grid.size() >= 2) report.p1.meta["step"] = grid[1] - grid[0];
    return report;
}

} // namespace zsp
