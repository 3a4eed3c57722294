#pragma once

#include <cstdint>

namespace weakmult::constants {

/// Rigorous two-sided enclosure of an infinite Euler product, obtained from
/// the partial product over primes <= cutoff_y plus the tail bound
/// prod_{p > y} (1 - 1/(p(p-1))) >= 1 - 2/y.
struct BracketedConstant {
    double lower = 0.0;
    double upper = 0.0;
    std::uint64_t cutoff_y = 0;

    double width() const { return upper - lower; }
    double midpoint() const { return lower + (upper - lower) / 2.0; }
    bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Encloses prod_p (1 - 1/(p(p-1))) over all primes. Requires y >= 3
/// (the tail estimate is invalid below that); throws std::invalid_argument.
BracketedConstant euler_product_partial(std::uint64_t y);

/// Encloses (log 2) * prod_p (1 - 1/(p(p-1))), componentwise outward rounded.
BracketedConstant reference_density_constant(std::uint64_t y);

}  // namespace weakmult::constants
