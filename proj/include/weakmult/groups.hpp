#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace weakmult::groups {

/// a(n) = number of (automatically normal) index-n subgroups of Z^r,
/// for 1 <= n <= N.
struct SubgroupGrowthSeries {
    std::uint32_t r = 0;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> a;  // a[n - 1] holds a(n)

    std::uint64_t operator()(std::uint64_t n) const;
};

/// Fast path: iterated Dirichlet convolution of the power sequences
/// n^0, n^1, ..., n^(r-1), exact in overflow-checked 64-bit integers
/// (std::overflow_error past 2^64 - 1).
SubgroupGrowthSeries subgroup_counts_zr(std::uint32_t r, std::uint64_t N);

/// Independent oracle: explicitly enumerates Hermite-normal-form matrices
/// (upper triangular, positive diagonal, column entries reduced modulo the
/// column's diagonal) with determinant <= N. Refuses r > 4 or N > 500.
SubgroupGrowthSeries subgroup_counts_hnf_oracle(std::uint32_t r, std::uint64_t N);

/// A finitely generated abelian group A + Z^r with A given by invariant
/// factors d_1 | d_2 | ... (each >= 2).
struct AbelianGroupDescriptor {
    AbelianGroupDescriptor(std::uint32_t free_rank, std::vector<std::uint64_t> torsion);

    std::uint32_t r = 0;
    std::vector<std::uint64_t> torsion;
};

/// Number of index-p subgroups of A + Z^r: (p^s - 1)/(p - 1) with
/// s = r + #{i : p | d_i}, the F_p-rank of the group mod p.
/// Throws std::invalid_argument when p is not prime.
std::uint64_t prime_index_count(const AbelianGroupDescriptor& desc, std::uint64_t p);

struct CoprimePairResult {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    bool coprime = false;  // false means the pair was rejected
    bool holds = false;    // a(nm) >= a(n) a(m)
    bool equal = false;    // abelian series: equality expected
};

struct CoprimeCheckReport {
    std::vector<CoprimePairResult> pairs;
    std::size_t rejected = 0;
    std::size_t violations = 0;           // coprime pairs failing >=
    std::size_t equality_violations = 0;  // coprime pairs failing ==
    bool all_hold = false;
};

/// Checks a(nm) >= a(n) a(m) on each coprime pair (equality for these
/// abelian series). Non-coprime pairs are flagged, not errors. Pairs with
/// nm > N violate the precondition and throw.
CoprimeCheckReport coprime_multiplicativity_check(
    const SubgroupGrowthSeries& series,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs);

/// True iff gcd(n, p(p-1)) = 1 and no divisor d > 1 of n satisfies
/// d = 1 (mod p). Throws std::invalid_argument when p is not prime.
bool np_condition_check(std::uint64_t n, std::uint64_t p);

struct GrowthBoundReport {
    double epsilon = 0.0;
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> violating_n;  // a(n) > n^(r-1+eps)
    double violation_fraction = 0.0;
    std::uint64_t largest_violating_n = 0;   // 0 when none
};

/// Fraction of n <= N violating a(n) <= n^(r-1+epsilon); should tend to 0
/// in N for fixed epsilon.
GrowthBoundReport growth_bound_check(const SubgroupGrowthSeries& series, double epsilon);

}  // namespace weakmult::groups
