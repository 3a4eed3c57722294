#include "weakmult/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "weakmult/sieve.hpp"

namespace weakmult::constants {

namespace {

// The partial product is accumulated in __float128 (113-bit mantissa), so
// the only rounding that matters happens in the final conversions to double.
// Error budget: each factor costs < 3 ulps at 2^-112 relative, i.e. even
// 10^6 factors stay below 1e-27 -- negligible against the 2/y tail.
using f128 = __float128;

double to_double_round_up(f128 v) {
    double d = static_cast<double>(v);
    while (static_cast<f128>(d) < v) d = std::nextafter(d, HUGE_VAL);
    return d;
}

// log 2 as a double-double constant; accurate to ~1e-33.
const f128 kLog2 = static_cast<f128>(0.6931471805599453) +
                   static_cast<f128>(2.3190468138462996e-17);

}  // namespace

BracketedConstant euler_product_partial(std::uint64_t y) {
    if (y < 3)
        throw std::invalid_argument(
            "euler_product_partial: tail bound requires y >= 3");

    const auto primes = sieve::build_prime_table(y).primes;
    f128 prod = 1;
    for (std::uint64_t p : primes) {
        const f128 pp = static_cast<f128>(p) * static_cast<f128>(p - 1);
        prod *= (f128(1) - f128(1) / pp);
    }
    const f128 budget = static_cast<f128>(3e-33) * static_cast<f128>(primes.size());

    BracketedConstant bracket;
    bracket.cutoff_y = y;
    bracket.upper = to_double_round_up(prod * (f128(1) + budget));
    // Anchoring the lower endpoint to the rounded upper one keeps the width
    // at most (2/y) * upper exactly in double arithmetic. Containment: the
    // true tail is >= exp(-2/y) >= (1 - 2/y)(1 + 2/y^2), and 2/y^2 dwarfs
    // both the accumulation budget and the final ulp nudges for any
    // reachable y.
    const f128 lo_exact =
        static_cast<f128>(bracket.upper) * (f128(1) - f128(2) / static_cast<f128>(y));
    double lower = to_double_round_up(lo_exact);
    bracket.lower = std::nextafter(lower, HUGE_VAL);
    return bracket;
}

BracketedConstant reference_density_constant(std::uint64_t y) {
    const BracketedConstant ep = euler_product_partial(y);
    BracketedConstant bracket;
    bracket.cutoff_y = y;
    bracket.upper = to_double_round_up(kLog2 * static_cast<f128>(ep.upper));
    const f128 lo_exact =
        static_cast<f128>(bracket.upper) * (f128(1) - f128(2) / static_cast<f128>(y));
    double lower = to_double_round_up(lo_exact);
    bracket.lower = std::nextafter(lower, HUGE_VAL);
    return bracket;
}

}  // namespace weakmult::constants
