#include "weakmult/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weakmult/parallel.hpp"

namespace weakmult::density {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;
}  // namespace

bool is_member_gpf(u64 n, u64 gpf) {
    if (n < 2 || gpf < 2) return false;
    if (static_cast<u128>(gpf) * gpf <= n) return false;
    return std::gcd(gpf - 1, n) == 1;
}

bool is_member(u64 n, const sieve::FactorSieve& fs) {
    if (n == 1) return false;
    return is_member_gpf(n, fs.gpf(n));
}

MemberClass classify_gpf(u64 n, u64 gpf, u64 x, long double log_x) {
    if (!is_member_gpf(n, gpf)) return MemberClass::NotMember;
    if (static_cast<u128>(gpf) * gpf > x) return MemberClass::A1;
    const long double scaled = static_cast<long double>(gpf) * log_x;
    if (scaled * scaled <= static_cast<long double>(x)) return MemberClass::A3;
    return MemberClass::A2;
}

MemberClass classify(u64 n, u64 x, const sieve::FactorSieve& fs) {
    if (n < 2) throw std::invalid_argument("classify: n must be >= 2");
    if (n > x) throw std::invalid_argument("classify: n exceeds scan bound x");
    return classify_gpf(n, fs.gpf(n), x, std::log(static_cast<long double>(x)));
}

DensityTable density_table(std::span<const u64> checkpoints,
                           const DensityScanConfig& config) {
    if (checkpoints.empty())
        throw std::invalid_argument("density_table: no checkpoints given");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 2)
            throw std::invalid_argument("density_table: checkpoints must be >= 2");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("density_table: checkpoints must be strictly increasing");
    }

    std::vector<u64> usable(checkpoints.begin(), checkpoints.end());
    std::vector<u64> rejected;
    while (!usable.empty() && usable.back() > config.capacity) {
        rejected.push_back(usable.back());
        usable.pop_back();
    }

    DensityTable table;
    table.reference = constants::reference_density_constant(config.reference_y);

    if (!usable.empty()) {
        const u64 max_x = usable.back();
        const std::size_t ncp = usable.size();
        std::vector<long double> log_x(ncp);
        for (std::size_t j = 0; j < ncp; ++j)
            log_x[j] = std::log(static_cast<long double>(usable[j]));

        const u64 root = [&] {
            u64 r = static_cast<u64>(std::sqrt(static_cast<double>(max_x)));
            while (r * r > max_x) --r;
            while ((r + 1) * (r + 1) <= max_x) ++r;
            return r;
        }();
        std::vector<u64> base;
        if (root >= 2) base = sieve::build_prime_table(root).primes;

        const u64 seg = std::max<u64>(config.segment_size, 1024);
        const u64 first = 2;
        const std::size_t num_segments =
            static_cast<std::size_t>((max_x - first + seg) / seg);

        // counts[s][j * 3 + c]: per-segment, per-checkpoint class counters;
        // merged by addition afterwards, so the merge is order-independent.
        std::vector<std::vector<u64>> counts(num_segments);

        parallel_for_index(num_segments, config.threads, [&](std::size_t s) {
            const u64 lo = first + static_cast<u64>(s) * seg;
            const u64 hi = std::min(max_x + 1, lo + seg);
            const std::size_t len = static_cast<std::size_t>(hi - lo);
            std::vector<u64> gpf(len);
            sieve::fill_factor_segment(lo, hi, base, gpf);

            std::vector<u64> local(ncp * 3, 0);
            // checkpoints below this segment never see its n
            std::size_t j_min = 0;
            while (j_min < ncp && usable[j_min] < lo) ++j_min;
            for (std::size_t i = 0; i < len; ++i) {
                const u64 n = lo + i;
                const u64 g = gpf[i];
                if (!is_member_gpf(n, g)) continue;
                const u128 g2 = static_cast<u128>(g) * g;
                for (std::size_t j = j_min; j < ncp; ++j) {
                    const u64 cx = usable[j];
                    if (n > cx) continue;  // checkpoint inside this segment
                    std::size_t cls;  // 0 = A1, 1 = A2, 2 = A3
                    if (g2 > cx) {
                        cls = 0;
                    } else {
                        const long double scaled = static_cast<long double>(g) * log_x[j];
                        cls = (scaled * scaled <= static_cast<long double>(cx)) ? 2 : 1;
                    }
                    local[j * 3 + cls]++;
                }
            }
            counts[s] = std::move(local);
        });

        std::vector<u64> total(ncp * 3, 0);
        for (const auto& local : counts)
            for (std::size_t k = 0; k < total.size(); ++k) total[k] += local[k];

        table.rows.reserve(ncp);
        for (std::size_t j = 0; j < ncp; ++j) {
            DensityRow row;
            row.x = usable[j];
            row.count_a1 = total[j * 3 + 0];
            row.count_a2 = total[j * 3 + 1];
            row.count_a3 = total[j * 3 + 2];
            row.count_a = row.count_a1 + row.count_a2 + row.count_a3;
            row.density = static_cast<double>(row.count_a) / static_cast<double>(row.x);
            table.rows.push_back(row);
        }
    }

    if (!rejected.empty()) {
        throw PartialResultError(
            "density_table: checkpoint exceeds configured capacity", std::move(table));
    }
    return table;
}

PartitionBoundReport partition_bound_check(u64 x, const DensityTable& table) {
    if (x < 100)
        throw std::invalid_argument("partition_bound_check: x must be >= 100");
    const DensityRow* row = nullptr;
    for (const auto& r : table.rows) {
        if (r.x == x) {
            row = &r;
            break;
        }
    }
    if (row == nullptr)
        throw std::invalid_argument("partition_bound_check: no table row for x");

    PartitionBoundReport report;
    report.x = x;
    report.count_a2 = row->count_a2;
    report.count_a3 = row->count_a3;
    const long double lx = std::log(static_cast<long double>(x));
    const long double llx = std::log(lx);
    const long double a3_bound = static_cast<long double>(x) / (lx * lx);
    const long double a2_bound = 4.0L * static_cast<long double>(x) * llx / lx;
    report.a3_bound = static_cast<double>(a3_bound);
    report.a2_bound = static_cast<double>(a2_bound);
    report.a3_ok = static_cast<long double>(row->count_a3) <= a3_bound;
    report.a2_ok = static_cast<long double>(row->count_a2) <= a2_bound;
    report.a3_margin = static_cast<double>(a3_bound - static_cast<long double>(row->count_a3));
    report.a2_margin = static_cast<double>(a2_bound - static_cast<long double>(row->count_a2));
    return report;
}

}  // namespace weakmult::density
