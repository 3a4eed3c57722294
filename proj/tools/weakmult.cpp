// weakmult: batch front-end for the library's number-theoretic experiments.
//
// Subcommands:
//   constant       bracketed Euler product and density reference constant
//   density-table  member/partition counts of the P^+ density set at checkpoints
//   wsm            weak super-multiplicativity window scans
//   exponent       sup / essential-limit exponent profile of a function
//   growth-demo    growth inequality margin and its k-fold iteration
//   subgroups      subgroup growth series of Z^r
//   bt-check       Brun-Titchmarsh inequality sweep
//   mertens        sum of 1/p over primes p = 1 (mod d)
//
// Every output embeds tool version, a config echo and the seed; identical
// config + seed produce byte-identical output (thread count changes only
// scheduling, never bytes, and is deliberately left out of the echo).
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "weakmult/arithfn.hpp"
#include "weakmult/constants.hpp"
#include "weakmult/density.hpp"
#include "weakmult/groups.hpp"
#include "weakmult/sieve.hpp"
#include "weakmult/version.hpp"

namespace {

using namespace weakmult;
using u64 = std::uint64_t;

// ---- deterministic formatting ----------------------------------------------

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_u64(u64 v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
    return buf;
}

using Cell = std::variant<u64, double, std::string, bool>;

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<u64>(c)) return fmt_u64(std::get<u64>(c));
    if (std::holds_alternative<double>(c)) return fmt_double(std::get<double>(c));
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
    return std::get<std::string>(c);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string cell_to_json(const Cell& c) {
    if (std::holds_alternative<std::string>(c))
        return "\"" + json_escape(std::get<std::string>(c)) + "\"";
    if (std::holds_alternative<double>(c)) {
        double v = std::get<double>(c);
        if (std::isnan(v)) return "null";
        return fmt_double(v);
    }
    return cell_to_string(c);
}

// A run's machine-readable report: ordered params, one rectangular table,
// scalar results, and free-form flags.
struct RunReport {
    std::string op;
    std::vector<std::pair<std::string, Cell>> params;  // sorted by caller
    std::vector<std::pair<std::string, Cell>> result;  // scalar summary
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> flags;
    u64 seed = 0;

    std::string to_csv() const {
        std::ostringstream out;
        out << "# tool: " << kToolName << " " << kToolVersion << "\n";
        out << "# op: " << op << "\n";
        out << "# params:";
        for (const auto& [k, v] : params) out << " " << k << "=" << cell_to_string(v);
        out << "\n# seed: " << seed << "\n";
        for (const auto& [k, v] : result)
            out << "# result: " << k << "=" << cell_to_string(v) << "\n";
        for (const auto& f : flags) out << "# flag: " << f << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << cell_to_string(row[i]);
            out << "\n";
        }
        return out.str();
    }

    std::string to_json() const {
        std::ostringstream out;
        out << "{\n";
        out << "  \"tool\": \"" << kToolName << "\",\n";
        out << "  \"version\": \"" << kToolVersion << "\",\n";
        out << "  \"op\": \"" << op << "\",\n";
        out << "  \"params\": {";
        for (std::size_t i = 0; i < params.size(); ++i)
            out << (i ? ", " : "") << "\"" << params[i].first
                << "\": " << cell_to_json(params[i].second);
        out << "},\n";
        out << "  \"seed\": " << seed << ",\n";
        out << "  \"result\": {";
        for (std::size_t i = 0; i < result.size(); ++i)
            out << (i ? ", " : "") << "\"" << result[i].first
                << "\": " << cell_to_json(result[i].second);
        out << "},\n";
        out << "  \"columns\": [";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? ", " : "") << "\"" << columns[i] << "\"";
        out << "],\n";
        out << "  \"checkpoints\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << (i ? ",\n    " : "\n    ") << "[";
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                out << (j ? ", " : "") << cell_to_json(rows[i][j]);
            out << "]";
        }
        out << (rows.empty() ? "]" : "\n  ]") << ",\n";
        out << "  \"flags\": [";
        for (std::size_t i = 0; i < flags.size(); ++i)
            out << (i ? ", " : "") << "\"" << json_escape(flags[i]) << "\"";
        out << "]\n";
        out << "}\n";
        return out.str();
    }
};

struct OutputOptions {
    std::string format = "csv";
    std::string out_path;
};

int emit(const RunReport& report, const OutputOptions& opts) {
    std::string text = opts.format == "json" ? report.to_json() : report.to_csv();
    if (opts.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream f(opts.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open output file " << opts.out_path << "\n";
            return 1;
        }
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    return 0;
}

std::vector<u64> parse_u64_list(const std::string& csv) {
    std::vector<u64> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

// --f spec: power:C | slow | divisor | sigma | const:V | iid
arithfn::ArithmeticFunction make_function(const std::string& spec, u64 seed) {
    if (spec == "slow") return arithfn::slow_power();
    if (spec == "divisor") return arithfn::divisor_count();
    if (spec == "sigma") return arithfn::sigma();
    if (spec == "iid") return arithfn::seeded_iid(arithfn::IidDistribution::uniform01, seed);
    if (spec.rfind("power:", 0) == 0) return arithfn::power(std::stod(spec.substr(6)));
    if (spec.rfind("const:", 0) == 0) return arithfn::constant(std::stod(spec.substr(6)));
    throw CLI::ValidationError(
        "--f", "unknown function '" + spec + "' (power:C, slow, divisor, sigma, const:V, iid)");
}

// ---- subcommand bodies -------------------------------------------------------

int run_constant(u64 y, u64 seed, const OutputOptions& opts) {
    const auto euler = constants::euler_product_partial(y);
    const auto ref = constants::reference_density_constant(y);
    RunReport report;
    report.op = "constant";
    report.seed = seed;
    report.params = {{"format", opts.format}, {"y", y}};
    report.result = {{"euler_lower", euler.lower},
                     {"euler_upper", euler.upper},
                     {"ref_lower", ref.lower},
                     {"ref_upper", ref.upper},
                     {"ref_width", ref.width()}};
    report.columns = {"y", "euler_lower", "euler_upper", "ref_lower", "ref_upper"};
    report.rows = {{y, euler.lower, euler.upper, ref.lower, ref.upper}};
    return emit(report, opts);
}

RunReport density_report(const density::DensityTable& table, u64 max_x,
                         const std::string& cps_echo, u64 ref_y, u64 seed,
                         const OutputOptions& opts) {
    RunReport report;
    report.op = "density-table";
    report.seed = seed;
    report.params = {{"checkpoints", cps_echo},
                     {"format", opts.format},
                     {"max", max_x},
                     {"y", ref_y}};
    report.columns = {"x",       "countA",  "countA1",   "countA2",
                      "countA3", "density", "ref_lower", "ref_upper"};
    for (const auto& row : table.rows) {
        report.rows.push_back({row.x, row.count_a, row.count_a1, row.count_a2,
                               row.count_a3, row.density, table.reference.lower,
                               table.reference.upper});
    }
    return report;
}

int run_density_table(u64 max_x, std::string checkpoints_csv, u64 ref_y,
                      unsigned threads, u64 seed, const OutputOptions& opts) {
    std::vector<u64> checkpoints;
    if (checkpoints_csv.empty()) {
        for (u64 c = 100; c < max_x; c *= 10) checkpoints.push_back(c);
        checkpoints.push_back(max_x);
        std::string echo;
        for (std::size_t i = 0; i < checkpoints.size(); ++i)
            echo += (i ? "," : "") + fmt_u64(checkpoints[i]);
        checkpoints_csv = echo;
    } else {
        checkpoints = parse_u64_list(checkpoints_csv);
    }

    density::DensityScanConfig config;
    config.capacity = max_x;
    config.threads = threads;
    config.reference_y = ref_y;

    if (max_x >= 5'000'000)
        std::cerr << "# scanning factor segments up to " << max_x << "\n";
    try {
        const auto table = density::density_table(checkpoints, config);
        return emit(density_report(table, max_x, checkpoints_csv, ref_y, seed, opts), opts);
    } catch (const density::PartialResultError& e) {
        auto report = density_report(e.partial(), max_x, checkpoints_csv, ref_y, seed, opts);
        report.flags.push_back("partial-result");
        emit(report, opts);
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_wsm(const std::string& fname, u64 n, double eps, const std::string& xs_csv,
            u64 seed, const OutputOptions& opts) {
    const auto f = make_function(fname, seed);
    const auto xs = parse_double_list(xs_csv);
    const auto windows = arithfn::wsm_check(f, n, eps, xs);

    RunReport report;
    report.op = "wsm";
    report.seed = seed;
    report.params = {{"eps", eps}, {"f", fname}, {"format", opts.format},
                     {"n", n},     {"x", xs_csv}};
    report.columns = {"x",    "m_lo",     "m_hi",        "window_size",
                      "hits", "fraction", "hits_over_x"};
    u64 nonzero = 0;
    for (const auto& w : windows) {
        report.rows.push_back({w.x, w.m_lo, w.m_hi, w.window_size, w.hits, w.fraction,
                               w.hits_over_x});
        if (w.window_empty)
            report.flags.push_back("window-empty:x=" + fmt_double(w.x));
        else if (w.hits > 0)
            ++nonzero;
    }
    report.result = {{"windows", static_cast<u64>(windows.size())},
                     {"windows_with_hits", nonzero}};
    return emit(report, opts);
}

int run_exponent(const std::string& fname, u64 N, u64 seed, const OutputOptions& opts) {
    const auto f = make_function(fname, seed);
    const auto prof = arithfn::exponent_profile(f, N);

    RunReport report;
    report.op = "exponent";
    report.seed = seed;
    report.params = {{"f", fname}, {"format", opts.format}, {"max", N}};
    report.result = {{"sup_exponent", prof.sup_exponent},
                     {"ess_exponent", prof.ess_exponent},
                     {"ess_spread", prof.ess_spread},
                     {"trim_fraction", prof.trim_fraction},
                     {"zero_count", prof.zero_count}};
    if (prof.ess_infinite) report.flags.push_back("ess-infinite");
    report.columns = {"n", "sup_exponent", "ess_exponent"};
    for (const auto& pt : prof.trajectory)
        report.rows.push_back({pt.n, pt.sup_exponent, pt.ess_exponent});
    return emit(report, opts);
}

int run_growth_demo(const std::string& fname, u64 n, double eps, double gamma, double x,
                    std::uint32_t k_max, u64 seed, const OutputOptions& opts) {
    const auto f = make_function(fname, seed);
    const auto margin = arithfn::growth_inequality_check(f, f, n, eps, gamma, x);
    const auto traj = arithfn::iterate_growth(f, f, n, eps, gamma, x, k_max);

    RunReport report;
    report.op = "growth-demo";
    report.seed = seed;
    report.params = {{"eps", eps},     {"f", fname},
                     {"format", opts.format}, {"gamma", gamma},
                     {"k", static_cast<u64>(k_max)}, {"n", n},
                     {"x", x}};
    report.result = {{"lhs", margin.lhs},
                     {"rhs", margin.rhs},
                     {"margin", margin.margin},
                     {"lhs_arg", margin.lhs_arg},
                     {"rhs_arg", margin.rhs_arg},
                     {"induced_exponent_bound", traj.induced_exponent_bound},
                     {"mu", traj.mu}};
    if (traj.truncated) report.flags.push_back("truncated");
    report.columns = {"k", "g_arg", "lhs", "rhs"};
    for (const auto& s : traj.steps)
        report.rows.push_back({static_cast<u64>(s.k), s.g_arg, s.lhs, s.rhs});
    return emit(report, opts);
}

int run_subgroups(std::uint32_t r, u64 N, u64 seed, const OutputOptions& opts) {
    const auto series = groups::subgroup_counts_zr(r, N);
    RunReport report;
    report.op = "subgroups";
    report.seed = seed;
    report.params = {{"format", opts.format}, {"n", N}, {"r", static_cast<u64>(r)}};
    report.columns = {"n", "a_n"};
    for (u64 n = 1; n <= N; ++n) report.rows.push_back({n, series(n)});
    return emit(report, opts);
}

int run_bt_check(u64 max_x, u64 q_max, u64 seed, const OutputOptions& opts) {
    const auto table = sieve::build_prime_table(max_x);
    RunReport report;
    report.op = "bt-check";
    report.seed = seed;
    report.params = {{"format", opts.format}, {"max", max_x}, {"q-max", q_max}};
    report.columns = {"q", "x", "count", "phi_q", "bound", "ok"};
    u64 violations = 0, checked = 0;
    for (u64 x = 1000; x <= max_x; x *= 10) {
        for (u64 q = 1; q <= q_max; ++q) {
            if (q * q >= x) break;
            u64 phi = 1;
            for (auto [p, e] : sieve::factorize(q).factors) {
                phi *= p - 1;
                for (std::uint32_t i = 1; i < e; ++i) phi *= p;
            }
            const u64 count = sieve::prime_count_progression(table, x, q, 1 % q);
            const double bound = 2.0 * static_cast<double>(x) /
                                 (static_cast<double>(phi) *
                                  std::log(static_cast<double>(x) / static_cast<double>(q)));
            const bool ok = static_cast<double>(count) <= bound;
            if (!ok) ++violations;
            ++checked;
            report.rows.push_back({q, x, count, phi, bound, ok});
        }
    }
    report.result = {{"checked", checked}, {"violations", violations}};
    return emit(report, opts);
}

int run_mertens(u64 max_x, u64 d, const std::string& checkpoints_csv, u64 seed,
                const OutputOptions& opts) {
    std::vector<u64> xs =
        checkpoints_csv.empty() ? std::vector<u64>{max_x} : parse_u64_list(checkpoints_csv);
    const auto table = sieve::build_prime_table(max_x);
    RunReport report;
    report.op = "mertens";
    report.seed = seed;
    report.params = {{"checkpoints", checkpoints_csv.empty() ? fmt_u64(max_x) : checkpoints_csv},
                     {"d", d},
                     {"format", opts.format},
                     {"max", max_x}};
    report.columns = {"x", "d", "sum"};
    for (u64 x : xs)
        report.rows.push_back({x, d, sieve::mertens_progression_sum(table, x, d)});
    return emit(report, opts);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakmult: reproducible number-theoretic experiments"};
    app.require_subcommand(1);

    // shared option storage
    OutputOptions opts;
    u64 seed = 0;
    unsigned threads = 1;
    u64 y = 1'000'000;
    u64 max_x = 1'000'000;
    u64 n_value = 2;
    u64 q_max = 100;
    u64 d_value = 1;
    std::uint32_t r_value = 2;
    std::uint32_t k_max = 10;
    double eps = 0.1, gamma = 0.0, x_value = 1000.0;
    std::string fname = "slow";
    std::string checkpoints_csv;
    std::string xs_csv = "1000,10000";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", opts.out_path, "output path (default stdout)");
        sub->add_option("--seed", seed, "PRNG seed, echoed in the header")
            ->capture_default_str();
    };

    auto* c_const = app.add_subcommand("constant", "Euler product / density constant bracket");
    c_const->add_option("--y", y, "prime cutoff")->capture_default_str();
    add_common(c_const);

    auto* c_dens = app.add_subcommand("density-table", "density scan of the P^+ member set");
    c_dens->add_option("--max", max_x, "scan capacity (largest checkpoint)")
        ->capture_default_str();
    c_dens->add_option("--checkpoints", checkpoints_csv, "comma-separated x values");
    c_dens->add_option("--y", y, "reference constant cutoff")->capture_default_str();
    c_dens->add_option("--threads", threads, "worker threads (0 = hardware)")
        ->envname("WEAKMULT_THREADS")
        ->capture_default_str();
    add_common(c_dens);

    auto* c_wsm = app.add_subcommand("wsm", "weak super-multiplicativity windows");
    c_wsm->add_option("--f", fname, "function: power:C|slow|divisor|sigma|const:V|iid")
        ->capture_default_str();
    c_wsm->add_option("--n", n_value, "fixed multiplier n")->capture_default_str();
    c_wsm->add_option("--eps", eps, "window epsilon")->capture_default_str();
    c_wsm->add_option("--x", xs_csv, "comma-separated window bases")->capture_default_str();
    add_common(c_wsm);

    auto* c_exp = app.add_subcommand("exponent", "log f(n)/log n profile");
    c_exp->add_option("--f", fname, "function spec")->capture_default_str();
    c_exp->add_option("--max", max_x, "profile bound N")->capture_default_str();
    add_common(c_exp);

    auto* c_growth = app.add_subcommand("growth-demo", "growth inequality and iteration");
    c_growth->add_option("--f", fname, "function spec (used as f and g)")->capture_default_str();
    c_growth->add_option("--n", n_value, "multiplier n")->capture_default_str();
    c_growth->add_option("--eps", eps, "epsilon")->capture_default_str();
    c_growth->add_option("--gamma", gamma, "gamma (default: eps)");
    c_growth->add_option("--x", x_value, "base point x")->capture_default_str();
    c_growth->add_option("--k", k_max, "iteration depth")->capture_default_str();
    add_common(c_growth);

    auto* c_sub = app.add_subcommand("subgroups", "subgroup growth series of Z^r");
    c_sub->add_option("--r", r_value, "rank")->capture_default_str();
    c_sub->add_option("--n", n_value, "series bound N")->capture_default_str();
    add_common(c_sub);

    auto* c_bt = app.add_subcommand("bt-check", "Brun-Titchmarsh sweep");
    c_bt->add_option("--max", max_x, "largest x (x sweeps 10^3,10^4,... up to max)")
        ->capture_default_str();
    c_bt->add_option("--q-max", q_max, "largest modulus q")->capture_default_str();
    add_common(c_bt);

    auto* c_mert = app.add_subcommand("mertens", "progression reciprocal prime sums");
    c_mert->add_option("--max", max_x, "prime cutoff x")->capture_default_str();
    c_mert->add_option("--d", d_value, "progression modulus (p = 1 mod d)")
        ->capture_default_str();
    c_mert->add_option("--checkpoints", checkpoints_csv, "comma-separated x values");
    add_common(c_mert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_const->parsed()) return run_constant(y, seed, opts);
        if (c_dens->parsed())
            return run_density_table(max_x, checkpoints_csv, y, threads, seed, opts);
        if (c_wsm->parsed()) return run_wsm(fname, n_value, eps, xs_csv, seed, opts);
        if (c_exp->parsed()) return run_exponent(fname, max_x, seed, opts);
        if (c_growth->parsed()) {
            if (!c_growth->count("--gamma")) gamma = eps;
            return run_growth_demo(fname, n_value, eps, gamma, x_value, k_max, seed, opts);
        }
        if (c_sub->parsed()) return run_subgroups(r_value, n_value, seed, opts);
        if (c_bt->parsed()) return run_bt_check(max_x, q_max, seed, opts);
        if (c_mert->parsed())
            return run_mertens(max_x, d_value, checkpoints_csv, seed, opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
