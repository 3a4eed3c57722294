// Brute-force reference implementations used to check the library. These
// deliberately share no code with the library paths they verify: plain
// trial division, a local Eratosthenes sieve, and direct summation.
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracles {

using u64 = std::uint64_t;

inline u64 gpf_trial(u64 n) {
    u64 best = 0, rem = n;
    for (u64 p = 2; p * p <= rem; ++p) {
        while (rem % p == 0) {
            best = p;
            rem /= p;
        }
    }
    if (rem > 1) best = rem;
    return best;
}

inline u64 spf_trial(u64 n) {
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;  // 1 maps to 1; callers treat n < 2 specially
}

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

// Membership in the P^+ density set, straight from the definition.
inline bool member_trial(u64 n) {
    if (n < 2) return false;
    const u64 g = gpf_trial(n);
    if (static_cast<unsigned __int128>(g) * g <= n) return false;
    return std::gcd(g - 1, n) == 1;
}

inline std::vector<u64> primes_upto(u64 limit) {
    std::vector<char> mark(limit + 1, 1);
    if (limit >= 0) mark[0] = 0;
    if (limit >= 1) mark[1] = 0;
    for (u64 i = 2; i * i <= limit; ++i)
        if (mark[i])
            for (u64 j = i * i; j <= limit; j += i) mark[j] = 0;
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i)
        if (mark[i]) out.push_back(i);
    return out;
}

// Partial Euler product prod_{p <= y} (1 - 1/(p(p-1))) in long double.
inline long double euler_product_partial_ld(u64 y) {
    long double prod = 1.0L;
    for (u64 p : primes_upto(y))
        prod *= (1.0L - 1.0L / (static_cast<long double>(p) * (p - 1)));
    return prod;
}

// Deterministic mixer for reproducible sampling inside tests.
inline u64 mix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace oracles
