#include "weakmult/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "weakmult/parallel.hpp"

namespace weakmult::sieve {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                  29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Write n-1 = d * 2^s. The witness set below is deterministic for
    // every n < 2^64.
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                  1795265022ULL}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeTable build_prime_table(u64 limit) {
    if (limit < 2) throw std::invalid_argument("build_prime_table: limit must be >= 2");
    std::vector<std::uint8_t> mark(limit + 1, 1);
    mark[0] = mark[1] = 0;
    for (u64 i = 2; i * i <= limit; ++i) {
        if (!mark[i]) continue;
        for (u64 j = i * i; j <= limit; j += i) mark[j] = 0;
    }
    PrimeTable table;
    table.limit = limit;
    for (u64 i = 2; i <= limit; ++i) {
        if (mark[i]) table.primes.push_back(i);
    }
    return table;
}

namespace {

// Pollard rho (Floyd cycle). Only reached for composites whose smallest
// factor exceeds the trial-division bound, i.e. n > ~10^12.
u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 x = 2, y = step(2), d = 1;
        while (d == 1) {
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) {
                d = n;  // cycle closed without a factor, retry with new c
                break;
            }
            d = std::gcd(diff, n);
            x = step(x);
            y = step(step(y));
        }
        if (d != n) return d;
    }
}

void factor_recursive(u64 n, std::vector<u64>& primes_out) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes_out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_recursive(d, primes_out);
    factor_recursive(n / d, primes_out);
}

constexpr u64 kTrialLimit = 1'000'000;

}  // namespace

Factorization factorize(u64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization result;
    result.n = n;
    u64 rem = n;
    auto push_run = [&](u64 p) {
        std::uint32_t e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        if (e > 0) result.factors.emplace_back(p, e);
    };
    push_run(2);
    push_run(3);
    push_run(5);
    // 6k +- 1 wheel; p*p computed as p <= rem / p to avoid overflow.
    static constexpr u64 wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    std::size_t w = 0;
    while (p <= kTrialLimit && rem / p >= p) {
        push_run(p);
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (rem > 1) {
        if (rem / p < p || is_prime(rem)) {
            // remainder below the square of the trial bound is prime
            result.factors.emplace_back(rem, 1);
        } else {
            std::vector<u64> rest;
            factor_recursive(rem, rest);
            std::sort(rest.begin(), rest.end());
            for (std::size_t i = 0; i < rest.size();) {
                std::size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                result.factors.emplace_back(rest[i], static_cast<std::uint32_t>(j - i));
                i = j;
            }
        }
    }
    // overflow-checked reconstruction guards the multiplication chain
    u128 check = 1;
    for (auto [q, e] : result.factors) {
        for (std::uint32_t i = 0; i < e; ++i) {
            check *= q;
            if (check > static_cast<u128>(UINT64_MAX))
                throw std::overflow_error("factorize: factor product overflow");
        }
    }
    if (static_cast<u64>(check) != n)
        throw std::logic_error("factorize: reconstruction mismatch");
    return result;
}

std::vector<u64> divisors(u64 n) {
    Factorization f = factorize(n);
    std::vector<u64> divs{1};
    for (auto [p, e] : f.factors) {
        std::size_t old_size = divs.size();
        u64 pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < old_size; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

void fill_factor_segment(u64 lo, u64 hi,
                         std::span<const u64> base_primes,
                         std::span<u64> gpf_out, std::span<u64> spf_out) {
    if (lo >= hi) throw std::invalid_argument("fill_factor_segment: empty range");
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    if (gpf_out.size() < len)
        throw std::invalid_argument("fill_factor_segment: gpf span too small");
    const bool want_spf = !spf_out.empty();
    if (want_spf && spf_out.size() < len)
        throw std::invalid_argument("fill_factor_segment: spf span too small");

    std::vector<u64> rem(len);
    for (std::size_t i = 0; i < len; ++i) {
        rem[i] = lo + i;
        gpf_out[i] = 0;
        if (want_spf) spf_out[i] = 0;
    }
    const u64 root = isqrt_u64(hi - 1);
    for (u64 p : base_primes) {
        if (p > root) break;
        u64 start = ((lo + p - 1) / p) * p;
        for (u64 m = start; m < hi; m += p) {
            std::size_t i = static_cast<std::size_t>(m - lo);
            while (rem[i] % p == 0) rem[i] /= p;
            gpf_out[i] = p;  // primes arrive in increasing order
            if (want_spf && spf_out[i] == 0) spf_out[i] = p;
        }
    }
    // What survives the base primes is either 1 or a single prime > root,
    // necessarily the largest prime factor.
    for (std::size_t i = 0; i < len; ++i) {
        if (rem[i] > 1) {
            gpf_out[i] = rem[i];
            if (want_spf && spf_out[i] == 0) spf_out[i] = rem[i];
        }
    }
}

FactorSieve::FactorSieve(u64 lo, u64 hi, std::vector<u64> gpf,
                         std::vector<u64> spf)
    : lo_(lo), hi_(hi), gpf_(std::move(gpf)), spf_(std::move(spf)) {}

u64 FactorSieve::gpf(u64 n) const {
    if (n < lo_ || n >= hi_)
        throw std::out_of_range("FactorSieve::gpf: n outside sieved window");
    if (n == 1) throw std::domain_error("FactorSieve::gpf: 1 has no prime divisor");
    return gpf_[static_cast<std::size_t>(n - lo_)];
}

u64 FactorSieve::spf(u64 n) const {
    if (n < lo_ || n >= hi_)
        throw std::out_of_range("FactorSieve::spf: n outside sieved window");
    if (n == 1) throw std::domain_error("FactorSieve::spf: 1 has no prime divisor");
    return spf_[static_cast<std::size_t>(n - lo_)];
}

FactorSieve build_factor_sieve(u64 lo, u64 hi, const SieveConfig& config) {
    if (lo < 1 || lo >= hi)
        throw std::invalid_argument("build_factor_sieve: need 1 <= lo < hi");
    const u64 span = hi - lo;
    if (span > config.max_span)
        throw std::invalid_argument(
            "build_factor_sieve: window exceeds configured memory budget");

    const u64 root = isqrt_u64(hi - 1);
    std::vector<u64> base;
    if (root >= 2) base = build_prime_table(root).primes;

    std::vector<u64> gpf(static_cast<std::size_t>(span));
    std::vector<u64> spf(static_cast<std::size_t>(span));

    const u64 seg = std::max<u64>(config.segment_size, 1024);
    const std::size_t num_segments = static_cast<std::size_t>((span + seg - 1) / seg);
    parallel_for_index(num_segments, config.threads, [&](std::size_t s) {
        u64 seg_lo = lo + static_cast<u64>(s) * seg;
        u64 seg_hi = std::min(hi, seg_lo + seg);
        std::size_t off = static_cast<std::size_t>(seg_lo - lo);
        std::size_t n = static_cast<std::size_t>(seg_hi - seg_lo);
        fill_factor_segment(seg_lo, seg_hi, base,
                            std::span<u64>(gpf.data() + off, n),
                            std::span<u64>(spf.data() + off, n));
    });
    return FactorSieve(lo, hi, std::move(gpf), std::move(spf));
}

u64 prime_count_progression(const PrimeTable& table, u64 x, u64 q, u64 a) {
    if (q < 1) throw std::invalid_argument("prime_count_progression: q must be >= 1");
    if (a >= q) throw std::invalid_argument("prime_count_progression: need 0 <= a < q");
    if (x < 1) throw std::invalid_argument("prime_count_progression: x must be >= 1");
    if (x > table.limit)
        throw std::invalid_argument("prime_count_progression: x exceeds table limit");
    u64 count = 0;
    for (u64 p : table.primes) {
        if (p > x) break;
        if (p % q == a) ++count;
    }
    return count;
}

u64 prime_count_progression(u64 x, u64 q, u64 a) {
    if (q < 1 || a >= q)
        throw std::invalid_argument("prime_count_progression: bad residue");
    if (x < 1) throw std::invalid_argument("prime_count_progression: x must be >= 1");
    if (x < 2) return 0;
    return prime_count_progression(build_prime_table(x), x, q, a);
}

double mertens_progression_sum(const PrimeTable& table, u64 x, u64 d) {
    if (d < 1) throw std::invalid_argument("mertens_progression_sum: d must be >= 1");
    if (x < 3) throw std::invalid_argument("mertens_progression_sum: x must be >= 3");
    if (x > table.limit)
        throw std::invalid_argument("mertens_progression_sum: x exceeds table limit");
    const u64 target = 1 % d;
    double sum = 0.0;
    for (u64 p : table.primes) {
        if (p > x) break;
        if (p % d == target) sum += 1.0 / static_cast<double>(p);
    }
    return sum;
}

double mertens_progression_sum(u64 x, u64 d) {
    return mertens_progression_sum(build_prime_table(x), x, d);
}

}  // namespace weakmult::sieve
