/// The prime-sum two-point correlation of zeta zeros: diagonal term (zeta on
/// the 1-line plus a prime double sum), oscillatory off-diagonal term (Euler
/// product with a carrier at the mean density), unfolding, and the closed
/// small-s expansions in both additive and rescaled form.

#pragma once

#include "zsp/constants.hpp"

#include <complex>

namespace zsp {

/// A height E on the critical line with its derived local scales:
/// n0 = log(E/2pi), rho_bar = n0 / 2pi.
struct HeightContext {
    double e_height = 0.0;
    double rho_bar = 0.0;
    double n0 = 0.0;
};

/// Builds the context; e <= 2pi throws std::invalid_argument (the local
/// density would not be positive).
HeightContext make_height_context(double e);

/// Diagonal term r2_diag(eps): -(1/4pi^2) d^2/d(eps)^2 of
/// [ log|zeta(1+i eps)|^2 + 2 sum_p sum_r (1-r)/(r^2 p^r) cos(eps r log p) ],
/// with both derivatives applied analytically. The r-sum is evaluated in the
/// closed geometric form sum_{r>=2} (r-1) w^r = w^2/(1-w)^2, w = p^(i eps)/p.
/// eps = 0 throws std::domain_error (1/eps^2 pole).
double r2_diag(const HeightContext& ctx, double eps, const PrimeTable& primes);

/// The Euler product prod_p [ 1 - (1 - p^(i eps))^2 / (p-1)^2 ], evaluated
/// in log space. Its small-eps expansion is 1 + c0 eps^2 + i Q eps^3 + ...
std::complex<double> euler_product(double eps, const PrimeTable& primes);

/// Off-diagonal term: (1/4pi^2) |zeta(1+i eps)|^2 e^(i 2pi rho_bar eps)
/// times the Euler product, plus complex conjugate. The imaginary part of
/// the conjugate-symmetrized value is asserted <= 1e-12 before being
/// discarded. eps = 0 throws std::domain_error.
double r2_off(const HeightContext& ctx, double eps, const PrimeTable& primes);

/// Unfolded two-point correlation at separation s (units of mean spacing):
/// [rho_bar^2 + r2_diag(s/rho_bar) + r2_off(s/rho_bar)] / rho_bar^2.
/// s <= 0 throws std::domain_error.
double r2_unfolded(const HeightContext& ctx, double s, const PrimeTable& primes);

enum class ExpansionForm { additive, rescaled };

/// Closed expansion of the unfolded R2. additive:
///   1 - sinc^2(pi s) - Lambda/(pi^2 rho^2) sin^2(pi s)
///     - Q/(2 pi^2 rho^3) s sin(2 pi s);
/// rescaled: the rho^-3 term absorbed into the rho^-2 one by s -> alpha s
/// inside the sine, alpha = 1 + C/n0.
double r2_expansion(const HeightContext& ctx, double s, const ConstantSet& cs,
                    ExpansionForm form);

} // namespace zsp
