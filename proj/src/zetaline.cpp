#include "zsp/zetaline.hpp"

#include "zsp/constants.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace zsp {

namespace {

using cd = std::complex<double>;

constexpr double kBranchSwitch = 0.1; // Laurent below, Euler-Maclaurin above
constexpr int kLaurentOrder = 6;      // Stieltjes constants through gamma_6

// B_2 .. B_12 over (2j)! as used by the zeta tail corrections.
constexpr std::array<double, 6> kBernoulli = {1.0 / 6.0,   -1.0 / 30.0,
                                              1.0 / 42.0,  -1.0 / 30.0,
                                              5.0 / 66.0,  -691.0 / 2730.0};

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Laurent series about the pole, with s-derivatives taken term-wise:
// zeta(1+x) = 1/x + sum (-1)^n gamma_n x^n / n!, x = i*eps.
struct SeriesParts {
    cd z, zs, zss; // value and derivatives in s = 1 + i*eps
};

SeriesParts laurent_parts(double eps) {
    const cd x(0.0, eps);
    SeriesParts out;
    out.z = 1.0 / x;
    out.zs = -1.0 / (x * x);
    out.zss = 2.0 / (x * x * x);
    for (int n = 0; n <= kLaurentOrder; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double g = sign * stieltjes_gamma(n);
        out.z += g / factorial(n) * std::pow(x, n);
        if (n >= 1) out.zs += g / factorial(n - 1) * std::pow(x, n - 1);
        if (n >= 2) out.zss += g / factorial(n - 2) * std::pow(x, n - 2);
    }
    return out;
}

SeriesParts euler_maclaurin_parts(double eps) {
    const cd s(1.0, eps);
    const long long n = std::max<long long>(50, llround(std::ceil(10.0 * std::abs(eps))));
    const double ln = std::log(static_cast<double>(n));

    SeriesParts out{cd(0.0), cd(0.0), cd(0.0)};
    for (long long k = 1; k < n; ++k) {
        const double lk = std::log(static_cast<double>(k));
        const cd v = std::exp(-s * lk);
        out.z += v;
        out.zs += -lk * v;
        out.zss += lk * lk * v;
    }

    const cd u = std::exp((1.0 - s) * ln); // N^(1-s)
    const cd sm1 = s - 1.0;
    out.z += u / sm1;
    out.zs += -ln * u / sm1 - u / (sm1 * sm1);
    out.zss += ln * ln * u / sm1 + 2.0 * ln * u / (sm1 * sm1) + 2.0 * u / (sm1 * sm1 * sm1);

    const cd h = 0.5 * std::exp(-s * ln); // N^(-s)/2
    out.z += h;
    out.zs += -ln * h;
    out.zss += ln * ln * h;

    for (int j = 1; j <= 6; ++j) {
        // c * P(s) * N^(1-s-2j) with P the Pochhammer product of 2j-1 factors.
        const double c = kBernoulli[static_cast<std::size_t>(j - 1)] / factorial(2 * j);
        cd p(1.0, 0.0), h1(0.0, 0.0), h2(0.0, 0.0);
        for (int i = 0; i <= 2 * j - 2; ++i) {
            const cd f = s + static_cast<double>(i);
            p *= f;
            h1 += 1.0 / f;
            h2 += 1.0 / (f * f);
        }
        const cd pp = p * h1;            // P'
        const cd ppp = p * (h1 * h1 - h2); // P''
        const cd w = std::exp((1.0 - s - 2.0 * j) * ln);
        out.z += c * p * w;
        out.zs += c * w * (pp - ln * p);
        out.zss += c * w * (ppp - 2.0 * ln * pp + ln * ln * p);
    }
    return out;
}

ZetaLineValue pack(double eps, const SeriesParts& parts, ZetaMethod method) {
    ZetaLineValue v;
    v.epsilon = eps;
    v.zeta = parts.z;
    v.dzeta = cd(0.0, 1.0) * parts.zs;  // d/d(eps) = i * d/ds
    v.ddzeta = -parts.zss;              // d^2/d(eps)^2 = -d^2/ds^2
    v.method = method;
    return v;
}

void check_domain(double eps) {
    if (std::abs(eps) > 1e3)
        throw std::domain_error("zeta_on_line: |eps| beyond the validated domain 1e3");
}

} // namespace

ZetaLineValue zeta_line_laurent(double eps) {
    check_domain(eps);
    if (eps == 0.0) throw std::domain_error("zeta_on_line: pole at eps = 0");
    return pack(eps, laurent_parts(eps), ZetaMethod::laurent);
}

ZetaLineValue zeta_line_euler_maclaurin(double eps) {
    check_domain(eps);
    if (eps == 0.0) throw std::domain_error("zeta_on_line: pole at eps = 0");
    return pack(eps, euler_maclaurin_parts(eps), ZetaMethod::euler_maclaurin);
}

ZetaLineValue zeta_on_line(double eps) {
    return std::abs(eps) < kBranchSwitch ? zeta_line_laurent(eps)
                                         : zeta_line_euler_maclaurin(eps);
}

std::complex<double> zeta_regular_part(double eps) {
    check_domain(eps);
    if (std::abs(eps) < kBranchSwitch) {
        const cd x(0.0, eps);
        cd reg(0.0, 0.0);
        for (int n = kLaurentOrder; n >= 0; --n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            reg = reg * x + sign * stieltjes_gamma(n) / factorial(n);
        }
        return reg;
    }
    return euler_maclaurin_parts(eps).z - 1.0 / cd(0.0, eps);
}

double d2_log_zeta_sq(double eps) {
    if (eps == 0.0)
        throw std::domain_error("d2_log_zeta_sq: singular at eps = 0 (pole 2/eps^2)");
    const ZetaLineValue v = zeta_on_line(eps);
    const cd r = v.dzeta / v.zeta;
    return 2.0 * (v.ddzeta / v.zeta - r * r).real();
}

} // namespace zsp
