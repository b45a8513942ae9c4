#include "zsp/constants.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <stdexcept>

using namespace zsp;

namespace {

// Shared moderately sized table; sieving is cheap but not free.
const PrimeTable& table_1e6() {
    static const PrimeTable t = sieve(1000000);
    return t;
}

} // namespace

TEST_SUITE("constants") {

TEST_CASE("sieve produces the right primes and counts") {
    const PrimeTable t = sieve(100);
    REQUIRE(t.primes.size() == 25);
    CHECK(t.primes.front() == 2);
    CHECK(t.primes[4] == 11);
    CHECK(t.primes.back() == 97);
    CHECK(t.log_primes[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(table_1e6().primes.size() == 78498);
    CHECK_THROWS_AS((void)sieve(1), std::invalid_argument);
}

TEST_CASE("stieltjes constants match reference digits") {
    const StieltjesPair g = stieltjes();
    CHECK(g.gamma0 == doctest::Approx(0.57721566490153286).epsilon(1e-14));
    CHECK(g.gamma1 == doctest::Approx(-0.072815845483676725).epsilon(1e-12));
    CHECK(stieltjes_gamma(0) == g.gamma0);
    CHECK(stieltjes_gamma(2) == doctest::Approx(-0.0096903631928723185).epsilon(1e-10));
    CHECK(stieltjes_gamma(10) == doctest::Approx(0.00020533281490906479).epsilon(1e-8));
    CHECK_THROWS_AS((void)stieltjes_gamma(11), std::invalid_argument);
    CHECK_THROWS_AS((void)stieltjes_gamma(-1), std::invalid_argument);
}

TEST_CASE("closed-form inner sum of c0 agrees with the truncated r-sum") {
    // per-prime identity: sum_{r>=2} (r-1)/p^r = 1/(p-1)^2
    for (long long p : {2LL, 3LL, 5LL, 101LL}) {
        double brute = 0.0;
        for (int r = 200; r >= 2; --r)
            brute += (r - 1.0) * std::pow(static_cast<double>(p), -r);
        const double closed = 1.0 / ((p - 1.0) * (p - 1.0));
        CHECK(std::abs(brute - closed) < 1e-12);
    }
}

TEST_CASE("q on a tiny table matches the hand-evaluated sum") {
    // primes {2,3,5,7}: sum log^3(p)/(p-1)^2
    const PrimeSum q = compute_q(sieve(10));
    CHECK(q.value == doctest::Approx(1.1297493594924937).epsilon(1e-14));
    CHECK(q.tail_error > 0.0);
}

TEST_CASE("prime-sum truncation stays within its own tail bound") {
    const PrimeTable coarse = sieve(1000);
    const PrimeSum q_coarse = compute_q(coarse);
    const PrimeSum q_fine = compute_q(table_1e6());
    CHECK(std::abs(q_coarse.value - q_fine.value) <= q_coarse.tail_error);

    const PrimeSum c0_coarse = compute_cn(0, coarse);
    const PrimeSum c0_fine = compute_cn(0, table_1e6());
    CHECK(std::abs(c0_coarse.value - c0_fine.value) <= c0_coarse.tail_error);

    const PrimeSum c1_coarse = compute_cn(1, coarse);
    const PrimeSum c1_fine = compute_cn(1, table_1e6());
    CHECK(std::abs(c1_coarse.value - c1_fine.value) <= c1_coarse.tail_error);
}

TEST_CASE("cn alternates in sign and c0/q are positive") {
    CHECK(compute_cn(0, table_1e6()).value > 0.0);
    CHECK(compute_cn(1, table_1e6()).value < 0.0);
    CHECK(compute_cn(2, table_1e6()).value > 0.0);
    CHECK(compute_q(table_1e6()).value > 0.0);
    CHECK_THROWS_AS((void)compute_cn(-1, table_1e6()), std::invalid_argument);
    CHECK_THROWS_AS((void)compute_cn(0, PrimeTable{}), std::invalid_argument);
}

TEST_CASE("constant set assembles its composites exactly") {
    const ConstantSet cs = build_constant_set(1000000);
    CHECK(cs.lambda == cs.gamma0 * cs.gamma0 + 2.0 * cs.gamma1 + cs.c0);
    CHECK(cs.c_ratio == cs.q / cs.lambda);
    CHECK(cs.sieve_limit == 1000000);
    // headline values, within the coarser 1e6 truncation
    CHECK(cs.lambda == doctest::Approx(1.57314).epsilon(2e-5));
    CHECK(cs.c_ratio == doctest::Approx(1.4720).epsilon(2e-4));
    CHECK_THROWS_AS((void)build_constant_set(999), std::invalid_argument);

    const ConstantSet coarse = build_constant_set(1000);
    CHECK(std::abs(coarse.lambda - cs.lambda) <= coarse.tail_error);
    CHECK(coarse.tail_error > cs.tail_error);
}

TEST_CASE("assembly from a tiny table works with a large tail bound") {
    const ConstantSet cs = assemble_constant_set(sieve(10));
    CHECK(cs.sieve_limit == 10);
    CHECK(cs.tail_error > 1.0);
    CHECK(std::isfinite(cs.lambda));
}

TEST_CASE("log-power integral matches its closed form") {
    CHECK(log_power_integral(0, 50.0) == doctest::Approx(1.0 / 50.0).epsilon(1e-14));
    const double l = 10.0;
    const double want = (std::log(l) * std::log(l) + 2.0 * std::log(l) + 2.0) / l;
    CHECK(log_power_integral(2, l) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("constants serialize to parseable json") {
    const ConstantSet cs = build_constant_set(1000);
    const nlohmann::json j = nlohmann::json::parse(constant_set_json(cs));
    CHECK(j.at("lambda").get<double>() == cs.lambda);
    CHECK(j.at("gamma1").get<double>() == cs.gamma1);
    CHECK(j.at("sieve_limit").get<long long>() == 1000);
    CHECK(j.at("tail_error").get<double>() == cs.tail_error);
}

} // TEST_SUITE
