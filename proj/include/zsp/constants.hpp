/// Arithmetic constants of the spacing-correction theory: prime sums c_n and
/// Q, Stieltjes constants gamma_0 and gamma_1, and the composites
/// Lambda = gamma_0^2 + 2 gamma_1 + c_0 and C = Q / Lambda.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zsp {

/// Primes up to a sieve bound, with their logarithms cached once (every
/// consumer sums functions of log p).
struct PrimeTable {
    long long limit = 0;
    std::vector<int64_t> primes;
    std::vector<double> log_primes;
};

/// A truncated prime sum together with a rigorous bound on what the
/// truncation discarded.
struct PrimeSum {
    double value = 0.0;
    double tail_error = 0.0;
};

/// All scalar constants of the theory. lambda and c_ratio are assembled from
/// the other fields exactly; tail_error bounds the prime-sum truncation.
struct ConstantSet {
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    double c0 = 0.0;
    double q = 0.0;
    double lambda = 0.0;
    double c_ratio = 0.0;
    double tail_error = 0.0;
    long long sieve_limit = 0;
};

/// Primes <= limit by sieve of Eratosthenes. limit < 2 throws
/// std::invalid_argument.
PrimeTable sieve(long long limit);

/// c_n = (-1)^n / (2n)! * sum_p (log p)^(2(n+1)) * sum_{r>=2} (r-1) r^(2n) / p^r.
/// For n = 0 the inner sum collapses to 1/(p-1)^2 and is used in that closed
/// form; for n >= 1 the r-sum is truncated once a term drops below r_tol
/// relative to the running sum. Empty table or n < 0 throws
/// std::invalid_argument.
PrimeSum compute_cn(int n, const PrimeTable& primes, double r_tol = 1e-16);

/// Q = sum_p log^3(p) / (p-1)^2 with an integral tail bound.
PrimeSum compute_q(const PrimeTable& primes);

/// gamma_0 (Euler-Mascheroni) and gamma_1, accurate to at least 12
/// significant digits. Computed once by Euler-Maclaurin and cached.
struct StieltjesPair {
    double gamma0 = 0.0;
    double gamma1 = 0.0;
};
StieltjesPair stieltjes();

/// Higher Stieltjes constants gamma_n for n <= 10, same machinery and cache.
/// Out-of-range n throws std::invalid_argument.
double stieltjes_gamma(int n);

/// Assembles the full set from an existing prime table of any size; coarse
/// tables simply carry a large tail_error.
ConstantSet assemble_constant_set(const PrimeTable& primes);

/// Assembles the full constant set from a fresh sieve. limit < 1000 throws
/// std::invalid_argument (the composites would be too coarse to mean much).
ConstantSet build_constant_set(long long limit);

/// JSON document with every ConstantSet field plus the sieve limit.
std::string constant_set_json(const ConstantSet& cs);

/// Integral bound (1/L) * sum_{i<=k} k!/i! * log^i(L) on
/// int_L^inf log^k(t)/t^2 dt; the building block of all tail estimates.
double log_power_integral(int k, double l);

} // namespace zsp
