/// Exact finite-N CUE quantities: the kernel, the two-point correlation and
/// its inverse-power expansion, the gap probability E(s) as an N x N
/// determinant, and the spacing density p_N = E * [(log E)'' + ((log E)')^2].

#pragma once

#include "zsp/curves.hpp"

#include <span>

namespace zsp {

/// Matrix dimension of the circular unitary ensemble. n < 2 is rejected by
/// every operation with std::invalid_argument.
struct KernelSpec {
    long long n = 2;
};

/// sin(pi(x-y)) / (N sin(pi(x-y)/N)), with the removable singularities at
/// x - y = m*N filled in by their limits ((-1)^(m(N-1))) via a short Taylor
/// series guard.
double kernel(const KernelSpec& spec, double x, double y);

/// R2 of CUE_N at unfolded separation s: 1 - kernel(s)^2.
double r2_cue_exact(const KernelSpec& spec, double s);

/// The inverse-power expansion of r2_cue_exact truncated after the N^-2
/// (order = 2) or N^-4 (order = 4) term. order must be 2 or 4
/// (std::invalid_argument otherwise).
double r2_truncated(const KernelSpec& spec, double s, int order);

/// Gap probability: determinant of [delta_jk - sin(pi s (j-k)/N)/(pi (j-k))]
/// (diagonal entries 1 - s/N), via symmetric eigendecomposition.
/// s outside [0, N] throws std::domain_error.
double gap_determinant(const KernelSpec& spec, double s);

/// Spacing density p_N on the grid, from analytic trace identities
/// (log E)'  = -tr[(I-A)^{-1} A'],
/// (log E)'' = -tr[(I-A)^{-1} A''] - tr[((I-A)^{-1} A')^2],
/// never from finite differences. Grid must lie within [0, min(N, 8)]
/// (std::domain_error); a near-singular I - A raises ConditioningError with
/// the offending s.
SpacingCurve spacing_density(const KernelSpec& spec, std::span<const double> grid);

} // namespace zsp
