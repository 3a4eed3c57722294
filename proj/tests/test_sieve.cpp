#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "weakmult/sieve.hpp"

using namespace weakmult;
using oracles::u64;

TEST_CASE("prime table: small hand-enumerable cases") {
    auto t10 = sieve::build_prime_table(10);
    CHECK(t10.primes == std::vector<u64>{2, 3, 5, 7});
    auto t2 = sieve::build_prime_table(2);
    CHECK(t2.primes == std::vector<u64>{2});
    CHECK_THROWS_AS(sieve::build_prime_table(1), std::invalid_argument);
}

TEST_CASE("prime table invariants up to 10^4") {
    auto table = sieve::build_prime_table(10'000);
    REQUIRE(!table.primes.empty());
    CHECK(table.primes.front() == 2);
    for (std::size_t i = 0; i < table.primes.size(); ++i) {
        if (i > 0) CHECK(table.primes[i] > table.primes[i - 1]);
        CHECK(oracles::is_prime_trial(table.primes[i]));
    }
    u64 pi = 0;
    for (u64 n = 2; n <= 10'000; ++n) pi += oracles::is_prime_trial(n);
    CHECK(table.primes.size() == pi);
}

TEST_CASE("prime table at 10^6 matches independent trial-division count") {
    auto table = sieve::build_prime_table(1'000'000);
    u64 pi = 0;
    for (u64 n = 2; n <= 1'000'000; ++n) pi += oracles::is_prime_trial(n);
    CHECK(table.primes.size() == pi);
    CHECK(table.primes.size() == 78498);
}

TEST_CASE("deterministic primality") {
    CHECK(sieve::is_prime(2));
    CHECK(sieve::is_prime(97));
    CHECK_FALSE(sieve::is_prime(1));
    CHECK_FALSE(sieve::is_prime(561));   // Carmichael
    CHECK_FALSE(sieve::is_prime(2047));  // strong pseudoprime base 2
    CHECK(sieve::is_prime((u64(1) << 61) - 1));
    CHECK_FALSE(sieve::is_prime(u64(1'000'003) * 1'000'033));
    for (u64 n = 2; n <= 2000; ++n) CHECK(sieve::is_prime(n) == oracles::is_prime_trial(n));
}

TEST_CASE("factor sieve: windows and point values") {
    auto fs = sieve::build_factor_sieve(2, 101);
    CHECK(fs.gpf(100) == 5);
    CHECK(fs.gpf(97) == 97);
    CHECK(fs.spf(100) == 2);

    auto fs2 = sieve::build_factor_sieve(1000, 1100);
    CHECK(fs2.gpf(1024) == 2);  // prime power
    CHECK(fs2.spf(1024) == 2);
}

TEST_CASE("factor sieve matches trial division on [10^6, 10^6 + 10^4)") {
    const u64 lo = 1'000'000, hi = 1'010'000;
    auto fs = sieve::build_factor_sieve(lo, hi);
    for (u64 n = lo; n < hi; ++n) {
        CHECK(fs.gpf(n) == oracles::gpf_trial(n));
        CHECK(fs.spf(n) == oracles::spf_trial(n));
    }
}

TEST_CASE("factor sieve exhaustive against trial division below 10^5") {
    auto fs = sieve::build_factor_sieve(2, 100'000);
    for (u64 n = 2; n < 100'000; ++n) {
        const u64 g = fs.gpf(n), s = fs.spf(n);
        REQUIRE(g == oracles::gpf_trial(n));
        REQUIRE(s == oracles::spf_trial(n));
        REQUIRE(s <= g);
        REQUIRE(n % g == 0);
        REQUIRE(n % s == 0);
        // n / gpf(n) only has prime factors <= gpf(n)
        if (n / g > 1) REQUIRE(oracles::gpf_trial(n / g) <= g);
    }
}

TEST_CASE("factor sieve windows placed near 10^9") {
    const u64 hi = 1'000'000'000;
    const u64 lo = hi - 1000;
    auto fs = sieve::build_factor_sieve(lo, hi);
    for (u64 n = lo; n < hi; ++n) {
        REQUIRE(fs.gpf(n) == oracles::gpf_trial(n));
        REQUIRE(fs.spf(n) == oracles::spf_trial(n));
    }
}

TEST_CASE("factor sieve error paths") {
    CHECK_THROWS_AS(sieve::build_factor_sieve(10, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve::build_factor_sieve(20, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve::build_factor_sieve(0, 10), std::invalid_argument);

    auto fs = sieve::build_factor_sieve(1, 10);
    CHECK_THROWS_AS(fs.gpf(1), std::domain_error);
    CHECK_THROWS_AS(fs.spf(1), std::domain_error);
    CHECK_THROWS_AS(fs.gpf(10), std::out_of_range);
    CHECK_THROWS_AS(fs.gpf(0), std::out_of_range);

    sieve::SieveConfig tiny;
    tiny.max_span = 100;
    CHECK_THROWS_AS(sieve::build_factor_sieve(1, 1000, tiny), std::invalid_argument);
}

TEST_CASE("factor sieve is identical with 1 and 3 worker threads") {
    sieve::SieveConfig one, three;
    one.threads = 1;
    three.threads = 3;
    three.segment_size = 4096;
    auto a = sieve::build_factor_sieve(2, 50'000, one);
    auto b = sieve::build_factor_sieve(2, 50'000, three);
    for (u64 n = 2; n < 50'000; ++n) {
        REQUIRE(a.gpf(n) == b.gpf(n));
        REQUIRE(a.spf(n) == b.spf(n));
    }
}

TEST_CASE("factorize: canonical examples") {
    auto f = sieve::factorize(360);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<u64, std::uint32_t>{2, 3});
    CHECK(f.factors[1] == std::pair<u64, std::uint32_t>{3, 2});
    CHECK(f.factors[2] == std::pair<u64, std::uint32_t>{5, 1});

    CHECK(sieve::factorize(1).factors.empty());
    auto p = sieve::factorize(97);
    REQUIRE(p.factors.size() == 1);
    CHECK(p.factors[0] == std::pair<u64, std::uint32_t>{97, 1});
    CHECK_THROWS_AS(sieve::factorize(0), std::invalid_argument);
}

TEST_CASE("factorize: reconstruction property on random 64-bit samples") {
    for (int i = 0; i < 300; ++i) {
        u64 n = oracles::mix64(0xFACE0000 + i) % 1'000'000'000ULL + 2;
        auto f = sieve::factorize(n);
        unsigned __int128 prod = 1;
        u64 prev = 0;
        for (auto [p, e] : f.factors) {
            CHECK(p > prev);
            CHECK(sieve::is_prime(p));
            prev = p;
            for (std::uint32_t k = 0; k < e; ++k) prod *= p;
        }
        REQUIRE(static_cast<u64>(prod) == n);
    }
    // semiprimes past the trial-division bound exercise the rho splitter
    auto f = sieve::factorize(u64(1'000'003) * 1'000'033);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == 1'000'003);
    CHECK(f.factors[1].first == 1'000'033);
}

TEST_CASE("divisors") {
    CHECK(sieve::divisors(1) == std::vector<u64>{1});
    CHECK(sieve::divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
    CHECK(sieve::divisors(97) == std::vector<u64>{1, 97});
}

TEST_CASE("prime counts in progressions: enumerated examples") {
    auto table = sieve::build_prime_table(1000);
    // 7,13,19,31,37,43,61,67,73,79,97
    CHECK(sieve::prime_count_progression(table, 100, 3, 1) == 11);
    // 5,13,17,29,37,41,53,61,73,89,97
    CHECK(sieve::prime_count_progression(table, 100, 4, 1) == 11);
    CHECK(sieve::prime_count_progression(table, 10, 2, 0) == 1);  // only p = 2
    CHECK(sieve::prime_count_progression(100, 3, 1) == 11);

    // non-coprime residue: counts the at-most-one matching prime, no error
    CHECK(sieve::prime_count_progression(table, 100, 10, 5) == 1);  // only p = 5
    CHECK(sieve::prime_count_progression(table, 100, 10, 4) == 0);

    CHECK_THROWS_AS(sieve::prime_count_progression(table, 100, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(sieve::prime_count_progression(table, 0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(sieve::prime_count_progression(table, 2000, 3, 1), std::invalid_argument);
}

TEST_CASE("progression counts over coprime residues sum to pi(x) minus primes dividing q") {
    auto table = sieve::build_prime_table(10'000);
    const u64 x = 10'000;
    u64 pi_x = 0;
    for (u64 p : table.primes) pi_x += (p <= x);
    for (u64 q : {2ULL, 3ULL, 4ULL, 10ULL, 30ULL, 97ULL}) {
        u64 total = 0;
        for (u64 a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1) total += sieve::prime_count_progression(table, x, q, a);
        u64 dividing = 0;
        for (auto [p, e] : sieve::factorize(q).factors) dividing += (p <= x);
        CHECK(total == pi_x - dividing);
    }
}

TEST_CASE("Brun-Titchmarsh holds on a spot grid") {
    auto table = sieve::build_prime_table(100'000);
    for (u64 x : {1000ULL, 10'000ULL, 100'000ULL}) {
        for (u64 q : {2ULL, 3ULL, 5ULL, 12ULL, 30ULL, 97ULL, 720ULL}) {
            if (q >= x) continue;  // the bound needs log(x/q) > 0
            u64 phi = 1;
            for (auto [p, e] : sieve::factorize(q).factors) {
                phi *= p - 1;
                for (std::uint32_t i = 1; i < e; ++i) phi *= p;
            }
            const double bound =
                2.0 * double(x) / (double(phi) * std::log(double(x) / double(q)));
            CHECK(double(sieve::prime_count_progression(table, x, q, 1 % q)) <= bound);
        }
    }
}

TEST_CASE("mertens progression sums") {
    auto table = sieve::build_prime_table(1000);
    // d = 1, x = 10: four terms
    const double four = 1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7;
    CHECK(sieve::mertens_progression_sum(table, 10, 1) == doctest::Approx(four).epsilon(1e-15));

    // d = 3, x = 100: direct summation over the 11 residue-1 primes
    double direct = 0.0;
    for (u64 p : {7ULL, 13ULL, 19ULL, 31ULL, 37ULL, 43ULL, 61ULL, 67ULL, 73ULL, 79ULL, 97ULL})
        direct += 1.0 / double(p);
    CHECK(sieve::mertens_progression_sum(table, 100, 3) == doctest::Approx(direct).epsilon(1e-15));

    CHECK_THROWS_AS(sieve::mertens_progression_sum(table, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(sieve::mertens_progression_sum(table, 10, 0), std::invalid_argument);
}

TEST_CASE("mertens increment tracks the loglog difference (d = 3)") {
    auto table = sieve::build_prime_table(1'000'000);
    const double inc = sieve::mertens_progression_sum(table, 1'000'000, 3) -
                       sieve::mertens_progression_sum(table, 100'000, 3);
    const double predicted = 0.5 * std::log(std::log(1e6) / std::log(1e5));
    CHECK(std::abs(inc - predicted) < 0.03);
}
