#include "zsp/bk.hpp"

#include "zsp/numerics.hpp"
#include "zsp/zetaline.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// log(1 + z) for complex z, switching to the series when z is small enough
// that the series at cubic order is exact to double precision. Almost every
// prime factor lands in the series branch (|z| <= 4/(p-1)^2).
std::complex<double> log1p_complex(std::complex<double> z) {
    if (std::abs(z) < 1e-4) return z * (1.0 - z * (0.5 - z / 3.0));
    return std::log(1.0 + z);
}

} // namespace

HeightContext make_height_context(double e) {
    if (!(e > kTwoPi))
        throw std::invalid_argument("make_height_context: height must exceed 2*pi");
    HeightContext ctx;
    ctx.e_height = e;
    ctx.n0 = std::log(e / kTwoPi);
    ctx.rho_bar = ctx.n0 / kTwoPi;
    return ctx;
}

double r2_diag(const HeightContext& ctx, double eps, const PrimeTable& primes) {
    (void)ctx;
    if (eps == 0.0) throw std::domain_error("r2_diag: eps = 0 sits on the pole");
    const double d2 = d2_log_zeta_sq(eps);

    // Second eps-derivative of the prime double sum. The repeat-index sum
    // collapses to the geometric closed form sum_{r>=2} (r-1) w^r
    // = w^2 / (1-w)^2 with w = p^(i eps) / p.
    KahanSum prime_part;
    for (std::size_t i = 0; i < primes.primes.size(); ++i) {
        const double lp = primes.log_primes[i];
        const std::complex<double> w =
            std::polar(1.0 / static_cast<double>(primes.primes[i]), eps * lp);
        const std::complex<double> ratio = w / (1.0 - w);
        prime_part.add(lp * lp * (ratio * ratio).real());
    }
    return -(d2 + 2.0 * prime_part.value()) / (4.0 * kPi * kPi);
}

std::complex<double> euler_product(double eps, const PrimeTable& primes) {
    if (primes.primes.empty()) throw std::invalid_argument("euler_product: empty prime table");
    // 1 - p^(i eps) = -2i sin(x/2) e^(i x/2) with x = eps log p, so the
    // squared difference is -4 sin^2(x/2) e^(i x); forming it this way is
    // exact even when x is tiny.
    KahanSum log_re;
    KahanSum log_im;
    for (std::size_t i = 0; i < primes.primes.size(); ++i) {
        const double x = eps * primes.log_primes[i];
        const double pm1 = static_cast<double>(primes.primes[i]) - 1.0;
        const double half = std::sin(0.5 * x);
        const std::complex<double> z =
            (4.0 * half * half / (pm1 * pm1)) * std::polar(1.0, x);
        const std::complex<double> lf = log1p_complex(z);
        log_re.add(lf.real());
        log_im.add(lf.imag());
    }
    return std::exp(std::complex<double>(log_re.value(), log_im.value()));
}

double r2_off(const HeightContext& ctx, double eps, const PrimeTable& primes) {
    if (eps == 0.0) throw std::domain_error("r2_off: eps = 0 sits on the pole");
    const ZetaLineValue v = zeta_on_line(eps);
    const std::complex<double> carrier = std::polar(1.0, kTwoPi * ctx.rho_bar * eps);
    const std::complex<double> z =
        (std::norm(v.zeta) / (4.0 * kPi * kPi)) * carrier * euler_product(eps, primes);
    const std::complex<double> symmetrized = z + std::conj(z);
    if (std::abs(symmetrized.imag()) > 1e-12)
        throw std::runtime_error("r2_off: conjugate symmetrization left an imaginary part");
    return symmetrized.real();
}

double r2_unfolded(const HeightContext& ctx, double s, const PrimeTable& primes) {
    if (!(s > 0.0)) throw std::domain_error("r2_unfolded: separation must be positive");
    const double eps = s / ctx.rho_bar;
    const double r2 = r2_diag(ctx, eps, primes) + r2_off(ctx, eps, primes);
    return 1.0 + r2 / (ctx.rho_bar * ctx.rho_bar);
}

double r2_expansion(const HeightContext& ctx, double s, const ConstantSet& cs,
                    ExpansionForm form) {
    if (s < 0.0) throw std::domain_error("r2_expansion: separation must be non-negative");
    const double t = kPi * s;
    const double sinc = std::abs(s) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
    const double rho2 = ctx.rho_bar * ctx.rho_bar;
    const double lead = 1.0 - sinc * sinc;

    if (form == ExpansionForm::additive) {
        const double sp = std::sin(t);
        return lead - cs.lambda / (kPi * kPi * rho2) * sp * sp
               - cs.q / (2.0 * kPi * kPi * rho2 * ctx.rho_bar) * s * std::sin(2.0 * t);
    }
    const double alpha = 1.0 + cs.c_ratio / ctx.n0;
    const double sp = std::sin(kPi * alpha * s);
    return lead - cs.lambda / (kPi * kPi * rho2) * sp * sp;
}

} // namespace zsp
