/// Monte Carlo cross-check of the determinant engine: Haar-distributed
/// unitary matrices, eigenphase spacings, and empirical CUE statistics.

#pragma once

#include "zsp/curves.hpp"
#include "zsp/zeros.hpp"

#include <cstdint>
#include <vector>

namespace zsp {

/// One sampling run. spacings holds samples * n circular eigenphase gaps in
/// units of the mean spacing (each block of n sums to exactly n), sample by
/// sample in generation order.
struct McRun {
    long long n = 0;
    long long samples = 0;
    uint64_t seed = 0;
    std::vector<double> spacings;
};

/// Draws Haar unitaries by QR of an i.i.d. complex-Gaussian matrix. The
/// haar_correction flag controls the phase fix that divides each Q column by
/// the phase of the matching R diagonal; without it the distribution is
/// subtly non-Haar, and tests exercise that defect deliberately. Spacings
/// are deterministic for a fixed seed (per-sample seeds are derived by a
/// splitmix step, so blocks could be generated independently).
/// n < 2 or samples < 1 throws std::invalid_argument.
McRun sample_cue(long long n, long long samples, uint64_t seed,
                 bool haar_correction = true);

/// Raw pooled eigenphases in (-pi, pi], same sampling path as sample_cue;
/// used by uniformity tests.
std::vector<double> sample_eigenphases(long long n, long long samples, uint64_t seed,
                                       bool haar_correction = true);

/// Histogram of the run's spacings (delegates to spacing_histogram).
SpacingCurve mc_spacing_curve(const McRun& run, const BinSpec& bins);

/// Circular pair correlation of the run: per sample, positions are rebuilt
/// from the spacing blocks on a circle of circumference n and all directed
/// pairs closer than bins.hi are counted. errors come from the per-sample
/// scatter (not a Poisson guess), so intra-matrix correlations are priced in.
CorrelationCurve mc_pair_correlation(const McRun& run, const BinSpec& bins);

/// Per-bin spacing histogram with errors from per-sample scatter, for
/// sigma-level comparisons against the determinant engine.
SpacingCurve mc_spacing_curve_sample_errors(const McRun& run, const BinSpec& bins);

/// Pseudo-ordinates that make the zeros pipeline reproduce this run's
/// spacings at height e: t_{k+1} = t_k + s_k / rho_bar(t_k), stored relative
/// to the offset e. Written via the offset_header format for full precision.
ZeroDataset surrogate_dataset(const McRun& run, double e_height);

} // namespace zsp
