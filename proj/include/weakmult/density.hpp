#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "weakmult/constants.hpp"
#include "weakmult/sieve.hpp"

namespace weakmult::density {

/// Membership in the set of n >= 2 whose largest prime factor P satisfies
/// P^2 > n (strict, integer arithmetic) and gcd(P - 1, n) = 1.
/// n = 1 is excluded by convention (no prime divisor).
bool is_member(std::uint64_t n, const sieve::FactorSieve& fs);

/// Core predicate on a precomputed largest prime factor.
bool is_member_gpf(std::uint64_t n, std::uint64_t gpf);

enum class MemberClass { NotMember, A1, A2, A3 };

/// Splits members by the size of their largest prime factor P relative to a
/// scan bound x: A1 when P^2 > x, A3 when (P log x)^2 <= x, A2 otherwise.
/// The P^2 comparisons are exact in 128-bit integers; the log x factor uses
/// long double with a +-1 integer tolerance at the A2/A3 boundary.
MemberClass classify(std::uint64_t n, std::uint64_t x, const sieve::FactorSieve& fs);

MemberClass classify_gpf(std::uint64_t n, std::uint64_t gpf, std::uint64_t x,
                         long double log_x);

struct DensityRow {
    std::uint64_t x = 0;
    std::uint64_t count_a = 0;
    std::uint64_t count_a1 = 0;
    std::uint64_t count_a2 = 0;
    std::uint64_t count_a3 = 0;
    double density = 0.0;
};

struct DensityTable {
    std::vector<DensityRow> rows;
    constants::BracketedConstant reference;  // independent of x
};

struct DensityScanConfig {
    std::uint64_t segment_size = std::uint64_t(1) << 20;
    std::uint64_t capacity = 100'000'000;  // largest checkpoint accepted
    unsigned threads = 1;
    std::uint64_t reference_y = 1'000'000;
};

/// Thrown when a requested checkpoint exceeds the configured capacity;
/// carries the rows completed up to that point.
class PartialResultError : public std::runtime_error {
public:
    PartialResultError(std::string message, DensityTable partial)
        : std::runtime_error(std::move(message)), partial_(std::move(partial)) {}
    const DensityTable& partial() const { return partial_; }

private:
    DensityTable partial_;
};

/// Exact member counts and partition counts at each checkpoint, computed in
/// one streaming pass over factor-sieve segments (members are never stored
/// per-n, so checkpoints up to ~10^9 fit in bounded memory). Checkpoints
/// must be strictly increasing.
DensityTable density_table(std::span<const std::uint64_t> checkpoints,
                           const DensityScanConfig& config = {});

struct PartitionBoundReport {
    std::uint64_t x = 0;
    std::uint64_t count_a2 = 0;
    std::uint64_t count_a3 = 0;
    double a3_bound = 0.0;  // x / log^2 x  (forced by membership, holds exactly)
    double a2_bound = 0.0;  // 4 x loglog x / log x  (asymptotic, slack factor 2)
    bool a3_ok = false;
    bool a2_ok = false;
    double a3_margin = 0.0;
    double a2_margin = 0.0;
};

/// Checks the partition tail bounds at the table row with the given x.
/// Requires x >= 100 and a matching row.
PartitionBoundReport partition_bound_check(std::uint64_t x, const DensityTable& table);

}  // namespace weakmult::density
