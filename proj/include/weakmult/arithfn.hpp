#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace weakmult::arithfn {

enum class FnKind { exact_formula, tabulated, seeded_random };

/// A nonnegative function on positive integers, evaluable pointwise.
/// Seeded-random functions reproduce identical values for identical
/// (seed, n) regardless of evaluation order.
class ArithmeticFunction {
public:
    ArithmeticFunction(std::string name, FnKind kind,
                       std::function<double(std::uint64_t)> eval);

    double operator()(std::uint64_t n) const;

    const std::string& name() const { return name_; }
    FnKind kind() const { return kind_; }

private:
    std::string name_;
    FnKind kind_;
    std::function<double(std::uint64_t)> eval_;
};

// ---- builtin constructors -------------------------------------------------

/// n -> n^c
ArithmeticFunction power(double c);

/// n -> n^(1 - delta(n)) for a nonincreasing schedule delta. The default
/// schedule is delta(n) = 1 / loglog(n + 20): strictly increasing and
/// super-multiplicative, approaching exponent 1 arbitrarily slowly.
ArithmeticFunction slow_power();
ArithmeticFunction slow_power(std::function<double(std::uint64_t)> delta,
                              std::string label);

/// Number-of-divisors function d(n).
ArithmeticFunction divisor_count();

/// Sum-of-divisors function sigma(n).
ArithmeticFunction sigma();

ArithmeticFunction constant(double value);

enum class IidDistribution { uniform01 };

/// Independent draws keyed by (seed, n) through a splitmix64-style mixer,
/// so evaluation order never changes values.
ArithmeticFunction seeded_iid(IidDistribution dist, std::uint64_t seed);

/// 1-indexed table of values; evaluation beyond the table throws.
ArithmeticFunction tabulated(std::vector<double> values,
                             std::string name = "tabulated");

// ---- weak super-multiplicativity window scan ------------------------------

struct WindowReport {
    std::uint64_t n = 0;
    double epsilon = 0.0;
    double x = 0.0;
    std::uint64_t m_lo = 0;  // first integer in [x, (1+eps)x]
    std::uint64_t m_hi = 0;  // last integer; m_hi < m_lo means empty
    std::uint64_t window_size = 0;
    std::uint64_t hits = 0;      // m with f(nm) >= (1-eps) f(n) f(m)
    double fraction = 0.0;       // hits / window_size; NaN when empty
    double hits_over_x = 0.0;    // alternative normalization by x itself
    bool window_empty = false;
};

/// Scans every integer m in [x, (1+eps)x] for each x; no sampling.
std::vector<WindowReport> wsm_check(const ArithmeticFunction& f, std::uint64_t n,
                                    double epsilon, std::span<const double> xs);

// ---- normal order ----------------------------------------------------------

/// (1/N) * #{n <= N : |f(n) - g(n)| >= epsilon * g(n)}.
/// Throws std::domain_error if g is not strictly positive on [1, N].
double normal_order_deviation(const ArithmeticFunction& f,
                              const ArithmeticFunction& g, double epsilon,
                              std::uint64_t N);

/// A positive function on (0, infinity), for the continuity checker.
struct RealFunction {
    std::string name;
    std::function<double(double)> eval;
};

/// Extends an integer-indexed function to real arguments by linear
/// interpolation on the log-log scale (clamped to f(1) below 1).
RealFunction log_log_interpolant(ArithmeticFunction f);

struct PairSampler {
    double x_min = 1.0;
    double x_max = 1e6;
    int base_points = 48;       // geometric grid of magnitudes
    int offsets_per_base = 8;   // random ratio offsets per base point
    std::uint64_t seed = 1;
};

struct ModulusCheckResult {
    bool holds = false;              // no counterexample among the samples
    bool found_counterexample = false;
    double x = 0.0;
    double y = 0.0;
    double deviation = 0.0;          // |g(x)/g(y) - 1| at the counterexample
    std::uint64_t samples_tested = 0;
};

/// Samples pairs with |x/y - 1| < delta and reports the first pair with
/// |g(x)/g(y) - 1| >= epsilon. A "holds" verdict is evidence, not a proof.
ModulusCheckResult log_uniform_modulus_check(const RealFunction& g, double epsilon,
                                             double delta, const PairSampler& sampler);

// ---- essential limit -------------------------------------------------------

struct EssentialLimitEstimate {
    double value = 0.0;   // midpoint of surviving min/max after trimming
    double spread = 0.0;  // half the surviving range
    bool is_infinite = false;
};

/// Discards the floor(trim * N) values furthest from the median and returns
/// the midpoint of the survivors' range. The infinity flag fires when the
/// lower trim-quantile exceeds infinity_threshold. Requires 0 < trim < 1/2
/// and at least 100 values.
EssentialLimitEstimate essential_limit(std::span<const double> values, double trim,
                                       double infinity_threshold = 1e4);

EssentialLimitEstimate essential_limit(const std::function<double(std::uint64_t)>& a,
                                       std::uint64_t N, double trim,
                                       double infinity_threshold = 1e4);

// ---- exponent profile ------------------------------------------------------

struct TrajectoryPoint {
    std::uint64_t n = 0;
    double sup_exponent = 0.0;
    double ess_exponent = 0.0;
};

struct ExponentEstimate {
    std::uint64_t N = 0;
    double sup_exponent = 0.0;
    double ess_exponent = 0.0;
    double ess_spread = 0.0;
    bool ess_infinite = false;
    double trim_fraction = 0.0;    // theta(N) = 1 / log N
    std::uint64_t zero_count = 0;  // zeros of f, excluded from both statistics
    std::vector<TrajectoryPoint> trajectory;  // geometric checkpoints
};

/// Profiles s_n = log f(n) / log n over 2 <= n <= N: the running supremum
/// and a trimmed essential-limit estimate with theta(N) = 1/log N.
/// Requires N >= 100; throws std::domain_error when f vanishes everywhere.
ExponentEstimate exponent_profile(const ArithmeticFunction& f, std::uint64_t N);

// ---- growth inequalities ---------------------------------------------------

struct GrowthMargin {
    double lhs = 0.0;   // g at the rounded argument n(1+gamma)x
    double rhs = 0.0;   // (1 - 5 eps) f(n) g(x)
    double margin = 0.0;
    std::uint64_t lhs_arg = 0;  // integer actually passed to g
    std::uint64_t rhs_arg = 0;
};

/// Pointwise check of g(n(1+gamma)x) >= (1-5eps) f(n) g(x).
/// Requires 0 < gamma <= epsilon < 1/5, n >= 1, x >= 1.
GrowthMargin growth_inequality_check(const ArithmeticFunction& f,
                                     const ArithmeticFunction& g, std::uint64_t n,
                                     double epsilon, double gamma, double x);

struct GrowthStep {
    std::uint32_t k = 0;
    std::uint64_t g_arg = 0;
    double lhs = 0.0;  // g(n^k (1+gamma)^k x)
    double rhs = 0.0;  // (1-5eps)^k f(n)^k g(x)
};

struct GrowthTrajectory {
    std::vector<GrowthStep> steps;
    double induced_exponent_bound = 0.0;  // log((1-5eps) f(n)) / log(n(1+gamma))
    double mu = 0.0;                      // inf of g over [1, n(1+gamma)]
    bool truncated = false;               // argument left the 64-bit range
};

/// Iterates the growth inequality k times; k = 0 reproduces lhs = rhs = g(x).
GrowthTrajectory iterate_growth(const ArithmeticFunction& f,
                                const ArithmeticFunction& g, std::uint64_t n,
                                double epsilon, double gamma, double x,
                                std::uint32_t k_max);

}  // namespace weakmult::arithfn
