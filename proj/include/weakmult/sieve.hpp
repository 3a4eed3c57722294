#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace weakmult::sieve {

/// All primes up to and including `limit`, in increasing order.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
};

/// Builds the table of primes <= limit. Throws std::invalid_argument for
/// limit < 2 (empty range).
PrimeTable build_prime_table(std::uint64_t limit);

/// Deterministic primality test for the full 64-bit range
/// (Miller-Rabin with a witness set known to be exact below 2^64).
bool is_prime(std::uint64_t n);

/// Canonical factorization n = prod p_i^e_i with p_i strictly increasing.
/// n = 1 yields an empty factor list.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
};

Factorization factorize(std::uint64_t n);

/// All divisors of n, sorted increasing. Plumbing for divisor scans.
std::vector<std::uint64_t> divisors(std::uint64_t n);

struct SieveConfig {
    std::uint64_t segment_size = std::uint64_t(1) << 20;
    /// Largest window span (hi - lo) a FactorSieve may materialize.
    std::uint64_t max_span = std::uint64_t(1) << 24;
    unsigned threads = 1;
};

/// Largest/smallest prime factor per integer over the window [lo, hi).
/// The window itself must fit the memory budget; placement may be far out
/// (windows near 10^9 only require base primes up to sqrt(hi)).
class FactorSieve {
public:
    FactorSieve(std::uint64_t lo, std::uint64_t hi,
                std::vector<std::uint64_t> gpf, std::vector<std::uint64_t> spf);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }

    /// Largest prime factor of n. Throws std::out_of_range when n is not in
    /// [lo, hi) and std::domain_error for n = 1 (no prime divisor).
    std::uint64_t gpf(std::uint64_t n) const;
    /// Smallest prime factor of n, same error contract as gpf().
    std::uint64_t spf(std::uint64_t n) const;

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint64_t> gpf_;
    std::vector<std::uint64_t> spf_;
};

FactorSieve build_factor_sieve(std::uint64_t lo, std::uint64_t hi,
                               const SieveConfig& config = {});

/// Fills gpf_out[i] (and spf_out[i] when non-empty) with the largest
/// (smallest) prime factor of lo + i for the window [lo, hi). Entries for
/// n = 1 are left as 0. base_primes must contain every prime <= sqrt(hi - 1).
/// This is the segment core shared by FactorSieve and streaming scans.
void fill_factor_segment(std::uint64_t lo, std::uint64_t hi,
                         std::span<const std::uint64_t> base_primes,
                         std::span<std::uint64_t> gpf_out,
                         std::span<std::uint64_t> spf_out = {});

/// Exact count of primes p <= x with p = a (mod q). Requires x <= table.limit,
/// q >= 1 and 0 <= a < q. Residues a with gcd(a, q) > 1 simply count the
/// at-most-one matching prime.
std::uint64_t prime_count_progression(const PrimeTable& table, std::uint64_t x,
                                      std::uint64_t q, std::uint64_t a);

/// Convenience overload that sieves up to x internally.
std::uint64_t prime_count_progression(std::uint64_t x, std::uint64_t q,
                                      std::uint64_t a);

/// Sum of 1/p over primes p <= x with p = 1 (mod d), accumulated in order of
/// increasing p. Requires x <= table.limit, x >= 3, d >= 1.
double mertens_progression_sum(const PrimeTable& table, std::uint64_t x,
                               std::uint64_t d);

double mertens_progression_sum(std::uint64_t x, std::uint64_t d);

}  // namespace weakmult::sieve
