#include "zsp/constants.hpp"

#include "zsp/numerics.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace zsp {

namespace {

// Bernoulli numbers B_2, B_4, ..., B_28: enough Euler-Maclaurin correction
// depth for 1e-12 Stieltjes constants at a direct-sum cutoff of 40.
constexpr std::array<double, 14> kBernoulli = {
    1.0 / 6.0,           -1.0 / 30.0,         1.0 / 42.0,
    -1.0 / 30.0,         5.0 / 66.0,          -691.0 / 2730.0,
    7.0 / 6.0,           -3617.0 / 510.0,     43867.0 / 798.0,
    -174611.0 / 330.0,   854513.0 / 138.0,    -236364091.0 / 2730.0,
    8553103.0 / 6.0,     -23749461029.0 / 870.0};

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Coefficient vectors (ascending powers) for the derivative polynomials of
// f(x) = log^n(x)/x: f^(d)(x) = P_d(log x)/x^(d+1) with P_0 = t^n and
// P_d = P_{d-1}' - d * P_{d-1}.
std::vector<double> derivative_poly(int n, int d) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p[static_cast<std::size_t>(n)] = 1.0;
    for (int k = 1; k <= d; ++k) {
        std::vector<double> next(p.size(), 0.0);
        for (std::size_t i = 1; i < p.size(); ++i)
            next[i - 1] += static_cast<double>(i) * p[i];
        for (std::size_t i = 0; i < p.size(); ++i)
            next[i] -= static_cast<double>(k) * p[i];
        p = std::move(next);
    }
    return p;
}

double eval_poly(const std::vector<double>& p, double t) {
    double v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
    return v;
}

// gamma_n by Euler-Maclaurin acceleration of
// sum_{k<=M} log^n(k)/k - log^(n+1)(M)/(n+1) as M -> infinity, folded at a
// direct-sum cutoff m.
double stieltjes_euler_maclaurin(int n, int m, int corrections) {
    KahanSum direct;
    for (int k = 1; k <= m; ++k)
        direct.add(std::pow(std::log(static_cast<double>(k)), n) / k);

    const double lm = std::log(static_cast<double>(m));
    double gamma = direct.value() - std::pow(lm, n + 1) / (n + 1) -
                   std::pow(lm, n) / (2.0 * m);
    for (int j = 1; j <= corrections; ++j) {
        const auto p = derivative_poly(n, 2 * j - 1);
        const double deriv = eval_poly(p, lm) / std::pow(static_cast<double>(m), 2 * j);
        gamma -= kBernoulli[static_cast<std::size_t>(j - 1)] / factorial(2 * j) * deriv;
    }
    return gamma;
}

const std::array<double, 11>& stieltjes_table() {
    static const std::array<double, 11> table = [] {
        std::array<double, 11> t{};
        for (int n = 0; n <= 10; ++n) t[static_cast<std::size_t>(n)] = stieltjes_euler_maclaurin(n, 40, 14);
        return t;
    }();
    return table;
}

} // namespace

double log_power_integral(int k, double l) {
    if (k < 0 || l <= 1.0)
        throw std::invalid_argument("log_power_integral: need k >= 0 and l > 1");
    const double ll = std::log(l);
    double term = factorial(k); // k!/i! for i = 0
    KahanSum sum;
    double lpow = 1.0;
    for (int i = 0; i <= k; ++i) {
        sum.add(term * lpow);
        lpow *= ll;
        term /= static_cast<double>(i + 1);
    }
    return sum.value() / l;
}

PrimeTable sieve(long long limit) {
    if (limit < 2) throw std::invalid_argument("sieve: limit must be at least 2");
    std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (long long p = 2; p * p <= limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (long long q = p * p; q <= limit; q += p)
            composite[static_cast<std::size_t>(q)] = 1;
    }
    PrimeTable table;
    table.limit = limit;
    for (long long p = 2; p <= limit; ++p) {
        if (!composite[static_cast<std::size_t>(p)]) {
            table.primes.push_back(p);
            table.log_primes.push_back(std::log(static_cast<double>(p)));
        }
    }
    return table;
}

PrimeSum compute_cn(int n, const PrimeTable& primes, double r_tol) {
    if (n < 0) throw std::invalid_argument("compute_cn: n must be non-negative");
    if (primes.primes.empty()) throw std::invalid_argument("compute_cn: empty prime table");

    KahanSum sum;
    if (n == 0) {
        // Inner sum in closed form: sum_{r>=2} (r-1)/p^r = 1/(p-1)^2.
        for (std::size_t i = 0; i < primes.primes.size(); ++i) {
            const double pm1 = static_cast<double>(primes.primes[i]) - 1.0;
            sum.add(primes.log_primes[i] * primes.log_primes[i] / (pm1 * pm1));
        }
        return {sum.value(), 4.0 * log_power_integral(2, static_cast<double>(primes.limit))};
    }

    for (std::size_t i = 0; i < primes.primes.size(); ++i) {
        const double p = static_cast<double>(primes.primes[i]);
        double inner = 0.0;
        double ppow = p * p;
        for (int r = 2;; ++r) {
            const double term = (r - 1.0) * std::pow(static_cast<double>(r), 2 * n) / ppow;
            inner += term;
            if (term < r_tol * inner) break;
            ppow *= p;
        }
        sum.add(std::pow(primes.log_primes[i], 2 * (n + 1)) * inner);
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double pref = sign / factorial(2 * n);
    // Tail: for p beyond the sieve the inner sum is dominated by its r = 2
    // term 4^n/p^2 (within a factor 2 once p > 1e3), so bound by the
    // integral of log^(2n+2)t / t^2 over all integers past the limit.
    const double tail = 2.0 * std::pow(4.0, n) / factorial(2 * n) *
                        log_power_integral(2 * n + 2, static_cast<double>(primes.limit));
    return {pref * sum.value(), tail};
}

PrimeSum compute_q(const PrimeTable& primes) {
    if (primes.primes.empty()) throw std::invalid_argument("compute_q: empty prime table");
    KahanSum sum;
    for (std::size_t i = 0; i < primes.primes.size(); ++i) {
        const double lp = primes.log_primes[i];
        const double pm1 = static_cast<double>(primes.primes[i]) - 1.0;
        sum.add(lp * lp * lp / (pm1 * pm1));
    }
    return {sum.value(), 4.0 * log_power_integral(3, static_cast<double>(primes.limit))};
}

StieltjesPair stieltjes() {
    const auto& t = stieltjes_table();
    return {t[0], t[1]};
}

double stieltjes_gamma(int n) {
    if (n < 0 || n > 10)
        throw std::invalid_argument("stieltjes_gamma: validated for 0 <= n <= 10 only");
    return stieltjes_table()[static_cast<std::size_t>(n)];
}

ConstantSet assemble_constant_set(const PrimeTable& table) {
    const PrimeSum c0 = compute_cn(0, table);
    const PrimeSum q = compute_q(table);
    const StieltjesPair g = stieltjes();

    ConstantSet cs;
    cs.gamma0 = g.gamma0;
    cs.gamma1 = g.gamma1;
    cs.c0 = c0.value;
    cs.q = q.value;
    cs.lambda = g.gamma0 * g.gamma0 + 2.0 * g.gamma1 + c0.value;
    cs.c_ratio = q.value / cs.lambda;
    cs.tail_error = c0.tail_error + q.tail_error;
    cs.sieve_limit = table.limit;
    return cs;
}

ConstantSet build_constant_set(long long limit) {
    if (limit < 1000)
        throw std::invalid_argument("build_constant_set: sieve limit below 1000 is too coarse");
    return assemble_constant_set(sieve(limit));
}

std::string constant_set_json(const ConstantSet& cs) {
    nlohmann::json j{{"gamma0", cs.gamma0},   {"gamma1", cs.gamma1},
                     {"c0", cs.c0},           {"q", cs.q},
                     {"lambda", cs.lambda},   {"c_ratio", cs.c_ratio},
                     {"tail_error", cs.tail_error}, {"sieve_limit", cs.sieve_limit}};
    return j.dump(2);
}

} // namespace zsp
