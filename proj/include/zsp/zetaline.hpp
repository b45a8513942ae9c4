/// zeta(1 + i*eps) on the 1-line, its first two derivatives in eps, and the
/// second logarithmic derivative of |zeta(1 + i*eps)|^2 needed by the
/// diagonal part of the pair-correlation formula.

#pragma once

#include <complex>

namespace zsp {

enum class ZetaMethod { laurent, euler_maclaurin };

/// zeta(1 + i*eps) with derivatives taken in eps (not in s): dzeta is
/// d/d(eps), ddzeta is d^2/d(eps)^2.
struct ZetaLineValue {
    double epsilon = 0.0;
    std::complex<double> zeta;
    std::complex<double> dzeta;
    std::complex<double> ddzeta;
    ZetaMethod method = ZetaMethod::laurent;
};

/// Evaluates zeta(1+i*eps) and its eps-derivatives, switching between a
/// Laurent series around the pole (|eps| < 0.1, Stieltjes constants through
/// gamma_6) and Euler-Maclaurin summation elsewhere. Validated domain
/// |eps| <= 1e3; outside it, and at eps = 0 exactly (the pole), throws
/// std::domain_error.
ZetaLineValue zeta_on_line(double eps);

/// zeta(1+i*eps) - 1/(i*eps): the pole-free part, finite at eps = 0 where it
/// equals gamma_0.
std::complex<double> zeta_regular_part(double eps);

/// d^2/d(eps)^2 of log|zeta(1+i*eps)|^2, computed analytically as
/// 2*Re(ddzeta/zeta - (dzeta/zeta)^2). Singular (like +2/eps^2) at eps = 0:
/// throws std::domain_error there; callers combine with the compensating
/// pole themselves.
double d2_log_zeta_sq(double eps);

/// Branch implementations, exposed so tests can force either method inside
/// the overlap window and verify agreement.
ZetaLineValue zeta_line_laurent(double eps);
ZetaLineValue zeta_line_euler_maclaurin(double eps);

} // namespace zsp
