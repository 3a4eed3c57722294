#include "weakmult/groups.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "weakmult/sieve.hpp"

namespace weakmult::groups {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 checked_pow(u64 base, std::uint32_t exp) {
    u128 result = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        result *= base;
        if (result > static_cast<u128>(UINT64_MAX))
            throw std::overflow_error("subgroup count power exceeds 64 bits");
    }
    return static_cast<u64>(result);
}

// c = a * Id_k (Dirichlet), overflow-checked.
std::vector<u64> convolve_with_power(const std::vector<u64>& a, std::uint32_t k,
                                     u64 N) {
    std::vector<u64> c(static_cast<std::size_t>(N) + 1, 0);
    for (u64 i = 1; i <= N; ++i) {
        const u64 ai = a[static_cast<std::size_t>(i)];
        if (ai == 0) continue;
        for (u64 b = 1; i * b <= N; ++b) {
            const u128 term = static_cast<u128>(ai) * checked_pow(b, k);
            const u128 sum = static_cast<u128>(c[static_cast<std::size_t>(i * b)]) + term;
            if (sum > static_cast<u128>(UINT64_MAX))
                throw std::overflow_error("subgroup count exceeds 64 bits");
            c[static_cast<std::size_t>(i * b)] = static_cast<u64>(sum);
        }
    }
    return c;
}

}  // namespace

u64 SubgroupGrowthSeries::operator()(u64 n) const {
    if (n < 1 || n > N)
        throw std::out_of_range("SubgroupGrowthSeries: n outside [1, N]");
    return a[static_cast<std::size_t>(n - 1)];
}

SubgroupGrowthSeries subgroup_counts_zr(std::uint32_t r, u64 N) {
    if (r < 1) throw std::invalid_argument("subgroup_counts_zr: r must be >= 1");
    if (N < 1) throw std::invalid_argument("subgroup_counts_zr: N must be >= 1");

    std::vector<u64> acc(static_cast<std::size_t>(N) + 1, 1);
    acc[0] = 0;  // index 0 unused
    for (std::uint32_t k = 1; k < r; ++k) acc = convolve_with_power(acc, k, N);

    SubgroupGrowthSeries series;
    series.r = r;
    series.N = N;
    series.a.assign(acc.begin() + 1, acc.end());
    return series;
}

// ---------------------------------------------------------------------------
// HNF oracle. A finite-index sublattice of Z^r has a unique basis matrix in
// Hermite normal form: upper triangular, diagonal d_1..d_r >= 1, and each
// entry above the diagonal reduced modulo the diagonal of its column. The
// enumeration below walks columns left to right, pruning on the remaining
// determinant budget, and visits every matrix (the above-diagonal entries
// are spun through an odometer), so it shares nothing with the convolution
// fast path.
// ---------------------------------------------------------------------------
namespace {

struct HnfEnumerator {
    std::uint32_t r;
    u64 N;
    std::vector<u64>& a;                    // a[det] accumulates
    std::array<std::array<u64, 4>, 4> mat{};

    void run() { column(0, 1); }

    void column(std::uint32_t col, u64 prod) {
        const bool last = (col + 1 == r);
        for (u64 d = 1; prod * d <= N; ++d) {
            const u64 pd = prod * d;
            mat[col][col] = d;
            std::array<u64, 3> entry{};
            for (std::uint32_t i = 0; i < col; ++i) mat[i][col] = 0;
            while (true) {
                if (last)
                    ++a[static_cast<std::size_t>(pd)];
                else
                    column(col + 1, pd);
                // odometer over the col entries above this diagonal
                std::uint32_t i = 0;
                while (i < col) {
                    if (++entry[i] < d) {
                        mat[i][col] = entry[i];
                        break;
                    }
                    entry[i] = 0;
                    mat[i][col] = 0;
                    ++i;
                }
                if (i == col) break;
            }
        }
    }
};

}  // namespace

SubgroupGrowthSeries subgroup_counts_hnf_oracle(std::uint32_t r, u64 N) {
    if (r < 1) throw std::invalid_argument("subgroup_counts_hnf_oracle: r must be >= 1");
    if (N < 1) throw std::invalid_argument("subgroup_counts_hnf_oracle: N must be >= 1");
    if (r > 4 || N > 500)
        throw std::invalid_argument(
            "subgroup_counts_hnf_oracle: refused, enumeration limited to r <= 4, N <= 500");

    std::vector<u64> counts(static_cast<std::size_t>(N) + 1, 0);
    HnfEnumerator e{r, N, counts, {}};
    e.run();

    SubgroupGrowthSeries series;
    series.r = r;
    series.N = N;
    series.a.assign(counts.begin() + 1, counts.end());
    return series;
}

AbelianGroupDescriptor::AbelianGroupDescriptor(std::uint32_t free_rank,
                                               std::vector<u64> torsion_orders)
    : r(free_rank), torsion(std::move(torsion_orders)) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2)
            throw std::invalid_argument("AbelianGroupDescriptor: invariant factors must be >= 2");
        if (i > 0 && torsion[i] % torsion[i - 1] != 0)
            throw std::invalid_argument("AbelianGroupDescriptor: divisibility chain violated");
    }
}

u64 prime_index_count(const AbelianGroupDescriptor& desc, u64 p) {
    if (!sieve::is_prime(p))
        throw std::invalid_argument("prime_index_count: p must be prime");
    std::uint32_t s = desc.r;
    for (u64 d : desc.torsion)
        if (d % p == 0) ++s;
    // (p^s - 1)/(p - 1) = 1 + p + ... + p^(s-1)
    u128 sum = 0, pk = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        sum += pk;
        pk *= p;
        if (sum > static_cast<u128>(UINT64_MAX))
            throw std::overflow_error("prime_index_count: count exceeds 64 bits");
    }
    return static_cast<u64>(sum);
}

CoprimeCheckReport coprime_multiplicativity_check(
    const SubgroupGrowthSeries& series,
    std::span<const std::pair<u64, u64>> pairs) {
    CoprimeCheckReport report;
    report.pairs.reserve(pairs.size());
    for (auto [n, m] : pairs) {
        CoprimePairResult res;
        res.n = n;
        res.m = m;
        res.coprime = std::gcd(n, m) == 1;
        if (!res.coprime) {
            ++report.rejected;
            report.pairs.push_back(res);
            continue;
        }
        if (n < 1 || m < 1 || n > series.N / m)
            throw std::invalid_argument("coprime_multiplicativity_check: nm must be <= N");
        const u128 product = static_cast<u128>(series(n)) * series(m);
        const u64 joint = series(n * m);
        res.holds = static_cast<u128>(joint) >= product;
        res.equal = static_cast<u128>(joint) == product;
        if (!res.holds) ++report.violations;
        if (!res.equal) ++report.equality_violations;
        report.pairs.push_back(res);
    }
    report.all_hold = report.violations == 0;
    return report;
}

bool np_condition_check(u64 n, u64 p) {
    if (!sieve::is_prime(p))
        throw std::invalid_argument("np_condition_check: p must be prime");
    if (n < 1) throw std::invalid_argument("np_condition_check: n must be >= 1");
    // gcd(n, p(p-1)) = 1, split to dodge the p(p-1) overflow
    if (std::gcd(n, p) != 1 || std::gcd(n, p - 1) != 1) return false;
    for (u64 d : sieve::divisors(n)) {
        if (d > 1 && d % p == 1) return false;
    }
    return true;
}

GrowthBoundReport growth_bound_check(const SubgroupGrowthSeries& series, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("growth_bound_check: epsilon must be > 0");
    GrowthBoundReport report;
    report.epsilon = epsilon;
    report.checked = series.N;
    const long double exponent = static_cast<long double>(series.r) - 1.0L +
                                 static_cast<long double>(epsilon);
    for (u64 n = 1; n <= series.N; ++n) {
        const long double bound = std::pow(static_cast<long double>(n), exponent);
        if (static_cast<long double>(series(n)) > bound)
            report.violating_n.push_back(n);
    }
    report.violation_fraction = static_cast<double>(report.violating_n.size()) /
                                static_cast<double>(series.N);
    report.largest_violating_n =
        report.violating_n.empty() ? 0 : report.violating_n.back();
    return report;
}

}  // namespace weakmult::groups
