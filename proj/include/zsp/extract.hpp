/// Richardson extrapolation in 1/N^2 over a sequence of CUE dimensions:
/// recovers the asymptotic spacing density p_0 and the first correction
/// p_1 = lim N^2 (p_N - p_0).

#pragma once

#include "zsp/curves.hpp"

#include <span>
#include <vector>

namespace zsp {

/// Extraction output: p0 (kind p_asymptotic), p1 (kind p1_correction), the
/// N-sequence used, and the sup-norm disagreement between the last two
/// successive p1 estimates as a self-consistency measure.
struct ExtractionReport {
    SpacingCurve p0;
    SpacingCurve p1;
    std::vector<long long> n_sequence;
    double consistency_error = 0.0;
};

/// p0 on the grid by eliminating the N^-2 (and, with more than two N values,
/// higher even) error terms across the sequence. Needs >= 2 ascending
/// dimensions, each >= 8 (std::invalid_argument otherwise).
SpacingCurve extract_p0(std::span<const long long> n_sequence,
                        std::span<const double> grid);

/// p1 on the grid as the extrapolated limit of N^2 (p_N - p0), eliminating
/// the N^-2 sub-correction. Needs >= 3 dimensions so a consistency error can
/// be formed.
ExtractionReport extract_p1(std::span<const long long> n_sequence,
                            std::span<const double> grid);

} // namespace zsp
