#include "weakmult/arithfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weakmult/sieve.hpp"

namespace weakmult::arithfn {

namespace {
using u64 = std::uint64_t;

u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double to_unit_interval(u64 bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

u64 round_to_u64(long double v) {
    if (v < 1.0L) return 1;
    return static_cast<u64>(v + 0.5L);
}

}  // namespace

ArithmeticFunction::ArithmeticFunction(std::string name, FnKind kind,
                                       std::function<double(u64)> eval)
    : name_(std::move(name)), kind_(kind), eval_(std::move(eval)) {
    if (!eval_) throw std::invalid_argument("ArithmeticFunction: empty evaluator");
}

double ArithmeticFunction::operator()(u64 n) const {
    if (n == 0) throw std::invalid_argument("ArithmeticFunction: domain is n >= 1");
    return eval_(n);
}

ArithmeticFunction power(double c) {
    return ArithmeticFunction("power(" + std::to_string(c) + ")", FnKind::exact_formula,
                              [c](u64 n) { return std::pow(static_cast<double>(n), c); });
}

ArithmeticFunction slow_power() {
    return slow_power(
        [](u64 n) { return 1.0 / std::log(std::log(static_cast<double>(n) + 20.0)); },
        "slow_power");
}

ArithmeticFunction slow_power(std::function<double(u64)> delta, std::string label) {
    if (!delta) throw std::invalid_argument("slow_power: empty schedule");
    return ArithmeticFunction(
        std::move(label), FnKind::exact_formula, [d = std::move(delta)](u64 n) {
            return std::pow(static_cast<double>(n), 1.0 - d(n));
        });
}

ArithmeticFunction divisor_count() {
    return ArithmeticFunction("divisor_count", FnKind::exact_formula, [](u64 n) {
        double count = 1.0;
        for (auto [p, e] : sieve::factorize(n).factors) count *= (e + 1.0);
        return count;
    });
}

ArithmeticFunction sigma() {
    return ArithmeticFunction("sigma", FnKind::exact_formula, [](u64 n) {
        double total = 1.0;
        for (auto [p, e] : sieve::factorize(n).factors) {
            double geom = 1.0, pe = 1.0;
            for (std::uint32_t i = 0; i < e; ++i) {
                pe *= static_cast<double>(p);
                geom += pe;
            }
            total *= geom;
        }
        return total;
    });
}

ArithmeticFunction constant(double value) {
    if (value < 0.0) throw std::invalid_argument("constant: value must be >= 0");
    return ArithmeticFunction("constant(" + std::to_string(value) + ")",
                              FnKind::exact_formula, [value](u64) { return value; });
}

ArithmeticFunction seeded_iid(IidDistribution dist, u64 seed) {
    if (dist != IidDistribution::uniform01)
        throw std::invalid_argument("seeded_iid: unsupported distribution");
    return ArithmeticFunction(
        "iid_uniform01(seed=" + std::to_string(seed) + ")", FnKind::seeded_random,
        [seed](u64 n) { return to_unit_interval(splitmix64(splitmix64(seed) + n)); });
}

ArithmeticFunction tabulated(std::vector<double> values, std::string name) {
    return ArithmeticFunction(
        std::move(name), FnKind::tabulated, [v = std::move(values)](u64 n) {
            if (n > v.size())
                throw std::out_of_range("tabulated: n beyond stored series");
            return v[static_cast<std::size_t>(n - 1)];
        });
}

std::vector<WindowReport> wsm_check(const ArithmeticFunction& f, u64 n,
                                    double epsilon, std::span<const double> xs) {
    if (n < 1) throw std::invalid_argument("wsm_check: n must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("wsm_check: need 0 < epsilon < 1");

    const double fn = f(n);
    std::vector<WindowReport> reports;
    reports.reserve(xs.size());
    for (double x : xs) {
        if (x < 1.0) throw std::invalid_argument("wsm_check: each x must be >= 1");
        WindowReport rep;
        rep.n = n;
        rep.epsilon = epsilon;
        rep.x = x;
        rep.m_lo = static_cast<u64>(std::ceil(x));
        rep.m_hi = static_cast<u64>(std::floor((1.0 + epsilon) * x));
        if (rep.m_hi < rep.m_lo) {
            rep.window_empty = true;
            rep.fraction = std::numeric_limits<double>::quiet_NaN();
            reports.push_back(rep);
            continue;
        }
        rep.window_size = rep.m_hi - rep.m_lo + 1;
        const double threshold_scale = (1.0 - epsilon) * fn;
        for (u64 m = rep.m_lo; m <= rep.m_hi; ++m) {
            if (m != 0 && n > UINT64_MAX / m)
                throw std::overflow_error("wsm_check: n*m exceeds 64 bits");
            if (f(n * m) >= threshold_scale * f(m)) ++rep.hits;
        }
        rep.fraction = static_cast<double>(rep.hits) / static_cast<double>(rep.window_size);
        rep.hits_over_x = static_cast<double>(rep.hits) / x;
        reports.push_back(rep);
    }
    return reports;
}

double normal_order_deviation(const ArithmeticFunction& f, const ArithmeticFunction& g,
                              double epsilon, u64 N) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("normal_order_deviation: epsilon must be > 0");
    if (N < 1) throw std::invalid_argument("normal_order_deviation: N must be >= 1");
    u64 exceptional = 0;
    for (u64 n = 1; n <= N; ++n) {
        const double gv = g(n);
        if (!(gv > 0.0))
            throw std::domain_error("normal_order_deviation: g must be strictly positive");
        if (std::abs(f(n) - gv) >= epsilon * gv) ++exceptional;
    }
    return static_cast<double>(exceptional) / static_cast<double>(N);
}

RealFunction log_log_interpolant(ArithmeticFunction f) {
    RealFunction g;
    g.name = f.name() + "/loglog-interp";
    g.eval = [f = std::move(f)](double x) {
        if (!(x > 0.0))
            throw std::domain_error("log_log_interpolant: x must be positive");
        if (x <= 1.0) return f(1);
        const double fl = std::floor(x);
        const u64 k = static_cast<u64>(fl);
        if (fl == x) return f(k);
        const double lo = f(k), hi = f(k + 1);
        if (!(lo > 0.0) || !(hi > 0.0))
            throw std::domain_error("log_log_interpolant: f must be positive to interpolate");
        const double t = (std::log(x) - std::log(fl)) /
                         (std::log(fl + 1.0) - std::log(fl));
        return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    };
    return g;
}

ModulusCheckResult log_uniform_modulus_check(const RealFunction& g, double epsilon,
                                             double delta, const PairSampler& sampler) {
    if (!(epsilon > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("log_uniform_modulus_check: need epsilon, delta > 0");
    if (sampler.base_points < 1 || sampler.offsets_per_base < 1 ||
        !(sampler.x_min > 0.0) || !(sampler.x_max >= sampler.x_min))
        throw std::invalid_argument("log_uniform_modulus_check: bad sampler");

    ModulusCheckResult result;
    const double ratio =
        sampler.base_points > 1
            ? std::pow(sampler.x_max / sampler.x_min,
                       1.0 / static_cast<double>(sampler.base_points - 1))
            : 1.0;
    // offsets t chosen so that |x/y - 1| < delta is guaranteed for y = x(1+t)
    const double t_cap = 0.999 * delta / (1.0 + delta);
    double x = sampler.x_min;
    for (int i = 0; i < sampler.base_points; ++i, x *= ratio) {
        for (int j = 0; j < sampler.offsets_per_base; ++j) {
            const u64 bits = splitmix64(splitmix64(sampler.seed) +
                                        static_cast<u64>(i) * 0x10001ULL +
                                        static_cast<u64>(j));
            const double u = 2.0 * to_unit_interval(bits) - 1.0;
            const double y = x * (1.0 + u * t_cap);
            if (!(std::abs(x / y - 1.0) < delta)) continue;
            const double gx = g.eval(x);
            const double gy = g.eval(y);
            if (!(gx > 0.0) || !(gy > 0.0) || !std::isfinite(gx) || !std::isfinite(gy))
                throw std::domain_error(
                    "log_uniform_modulus_check: g must be positive and finite at samples");
            ++result.samples_tested;
            const double dev = std::abs(gx / gy - 1.0);
            if (dev >= epsilon) {
                result.found_counterexample = true;
                result.x = x;
                result.y = y;
                result.deviation = dev;
                result.holds = false;
                return result;
            }
        }
    }
    result.holds = true;
    return result;
}

EssentialLimitEstimate essential_limit(std::span<const double> values, double trim,
                                       double infinity_threshold) {
    const std::size_t N = values.size();
    if (N < 100)
        throw std::invalid_argument("essential_limit: need at least 100 values");
    if (!(trim > 0.0 && trim < 0.5))
        throw std::invalid_argument("essential_limit: need 0 < trim < 1/2");

    std::vector<double> sorted(values.begin(), values.end());
    const std::size_t drop = static_cast<std::size_t>(trim * static_cast<double>(N));
    const std::size_t keep = N - drop;

    // lower trim-quantile decides the infinity flag
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(drop),
                     sorted.end());
    const double low_quantile = sorted[drop];

    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(N / 2),
                     sorted.end());
    const double median = sorted[N / 2];

    std::vector<std::pair<double, double>> by_distance(N);  // (|v - median|, v)
    for (std::size_t i = 0; i < N; ++i)
        by_distance[i] = {std::abs(values[i] - median), values[i]};
    std::nth_element(by_distance.begin(),
                     by_distance.begin() + static_cast<std::ptrdiff_t>(keep - 1),
                     by_distance.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    double lo = by_distance[0].second, hi = by_distance[0].second;
    for (std::size_t i = 0; i < keep; ++i) {
        lo = std::min(lo, by_distance[i].second);
        hi = std::max(hi, by_distance[i].second);
    }

    EssentialLimitEstimate est;
    est.value = lo + (hi - lo) / 2.0;
    est.spread = (hi - lo) / 2.0;
    est.is_infinite = low_quantile > infinity_threshold;
    return est;
}

EssentialLimitEstimate essential_limit(const std::function<double(u64)>& a, u64 N,
                                       double trim, double infinity_threshold) {
    if (N < 100) throw std::invalid_argument("essential_limit: need N >= 100");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(N));
    for (u64 n = 1; n <= N; ++n) values.push_back(a(n));
    return essential_limit(values, trim, infinity_threshold);
}

ExponentEstimate exponent_profile(const ArithmeticFunction& f, u64 N) {
    if (N < 100) throw std::invalid_argument("exponent_profile: need N >= 100");

    ExponentEstimate est;
    est.N = N;
    est.trim_fraction = 1.0 / std::log(static_cast<double>(N));

    std::vector<double> ratios;  // s_n = log f(n) / log n for nonzero f(n)
    ratios.reserve(static_cast<std::size_t>(N - 1));
    double sup = -std::numeric_limits<double>::infinity();

    // geometric checkpoints: 256, 1024, 4096, ... capped at N
    std::vector<u64> checkpoints;
    for (u64 c = 256; c < N; c *= 4) checkpoints.push_back(c);
    checkpoints.push_back(N);

    std::size_t next_cp = 0;
    for (u64 n = 2; n <= N; ++n) {
        const double v = f(n);
        if (v < 0.0)
            throw std::domain_error("exponent_profile: f must be nonnegative");
        if (v == 0.0) {
            ++est.zero_count;
        } else {
            const double s = std::log(v) / std::log(static_cast<double>(n));
            ratios.push_back(s);
            sup = std::max(sup, s);
        }
        while (next_cp < checkpoints.size() && n == checkpoints[next_cp]) {
            TrajectoryPoint pt;
            pt.n = n;
            pt.sup_exponent = sup;
            if (ratios.size() >= 100) {
                const double theta = 1.0 / std::log(static_cast<double>(n));
                pt.ess_exponent = essential_limit(ratios, theta).value;
            } else {
                pt.ess_exponent = std::numeric_limits<double>::quiet_NaN();
            }
            est.trajectory.push_back(pt);
            ++next_cp;
        }
    }

    if (ratios.empty())
        throw std::domain_error("exponent_profile: f vanished at every n, profile undefined");
    if (ratios.size() < 100)
        throw std::invalid_argument(
            "exponent_profile: fewer than 100 nonzero values, raise N");

    est.sup_exponent = sup;
    const auto ess = essential_limit(ratios, est.trim_fraction);
    est.ess_exponent = ess.value;
    est.ess_spread = ess.spread;
    est.ess_infinite = ess.is_infinite;
    return est;
}

GrowthMargin growth_inequality_check(const ArithmeticFunction& f,
                                     const ArithmeticFunction& g, u64 n,
                                     double epsilon, double gamma, double x) {
    if (n < 1) throw std::invalid_argument("growth_inequality_check: n must be >= 1");
    if (!(gamma > 0.0 && gamma <= epsilon && epsilon < 0.2))
        throw std::invalid_argument("growth_inequality_check: need 0 < gamma <= epsilon < 1/5");
    if (!(x >= 1.0)) throw std::invalid_argument("growth_inequality_check: x must be >= 1");

    GrowthMargin m;
    m.lhs_arg = round_to_u64(static_cast<long double>(n) * (1.0L + static_cast<long double>(gamma)) *
                             static_cast<long double>(x));
    m.rhs_arg = round_to_u64(static_cast<long double>(x));
    m.lhs = g(m.lhs_arg);
    m.rhs = (1.0 - 5.0 * epsilon) * f(n) * g(m.rhs_arg);
    m.margin = m.lhs - m.rhs;
    return m;
}

GrowthTrajectory iterate_growth(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                u64 n, double epsilon, double gamma, double x,
                                std::uint32_t k_max) {
    if (n < 1) throw std::invalid_argument("iterate_growth: n must be >= 1");
    if (!(gamma > 0.0 && gamma <= epsilon && epsilon < 0.2))
        throw std::invalid_argument("iterate_growth: need 0 < gamma <= epsilon < 1/5");
    if (!(x >= 1.0)) throw std::invalid_argument("iterate_growth: x must be >= 1");

    GrowthTrajectory traj;
    const double fn = f(n);
    const long double step = static_cast<long double>(n) * (1.0L + static_cast<long double>(gamma));
    traj.induced_exponent_bound =
        std::log((1.0 - 5.0 * epsilon) * fn) / static_cast<double>(std::log(step));

    // mu = inf of g over [1, n(1+gamma)], by integer scan
    const u64 mu_hi = static_cast<u64>(std::ceil(static_cast<double>(step)));
    double mu = std::numeric_limits<double>::infinity();
    for (u64 t = 1; t <= mu_hi; ++t) mu = std::min(mu, g(t));
    traj.mu = mu;

    const double g_x = g(round_to_u64(static_cast<long double>(x)));
    const double rhs_factor = (1.0 - 5.0 * epsilon) * fn;
    long double arg = static_cast<long double>(x);
    double rhs = g_x;
    for (std::uint32_t k = 0; k <= k_max; ++k) {
        if (arg > 1.8e18L) {
            traj.truncated = true;
            break;
        }
        GrowthStep s;
        s.k = k;
        s.g_arg = round_to_u64(arg);
        s.lhs = g(s.g_arg);
        s.rhs = rhs;
        traj.steps.push_back(s);
        arg *= step;
        rhs *= rhs_factor;
    }
    return traj;
}

}  // namespace weakmult::arithfn
