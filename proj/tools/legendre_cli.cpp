// Command-line front end: reproduces the prime-counting experiments
// (average-error table, bisection fit, bias scan, error tracks, crossover
// comparison, explicit-formula demos) as deterministic CSV/report output.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "legendre/bias.hpp"
#include "legendre/csv.hpp"
#include "legendre/errors.hpp"
#include "legendre/fit.hpp"
#include "legendre/logint.hpp"
#include "legendre/primes.hpp"
#include "legendre/riemann.hpp"

namespace fs = std::filesystem;
using namespace legendre;

namespace {

constexpr const char* kCacheFileName = "pi-checkpoints.txt";

struct RunConfig {
    std::uint64_t limit = 1'000'000;
    std::uint64_t start = 0;  // 0 = command default (3; 5 for the li fit)
    std::uint64_t hi = 0;     // 0 = use limit
    double tol = 1e-6;
    std::string cache_dir;
    std::string out = "-";
    bool no_unity_offset = false;
    std::string target = "pi";
    std::string b_list_csv;
    std::vector<double> b_list;
    std::string zeros_file = "data/zeta_zeros_100.txt";
};

// comma-separated doubles; empty string (or only commas) means an empty list
std::vector<double> parse_b_list(const std::string& csv_text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv_text.size()) {
        const std::size_t comma = std::min(csv_text.find(',', pos), csv_text.size());
        const std::string token = csv_text.substr(pos, comma - pos);
        if (!token.empty()) {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size())
                throw std::invalid_argument("--b-list: bad value '" + token + "'");
            out.push_back(v);
        }
        if (comma == csv_text.size()) break;
        pos = comma + 1;
    }
    return out;
}

std::uint64_t start_or(const RunConfig& cfg, std::uint64_t fallback) {
    return cfg.start ? cfg.start : fallback;
}

// Sink that is either stdout or a file; files failing to open are I/O errors.
struct Output {
    explicit Output(const std::string& path_or_dash) {
        if (path_or_dash == "-") return;
        file = std::make_unique<std::ofstream>(path_or_dash);
        if (!*file) throw std::runtime_error("cannot open output file: " + path_or_dash);
        path = path_or_dash;
    }
    std::ostream& stream() { return file ? *file : std::cout; }
    void finish() {
        stream().flush();
        if (file && !*file) throw std::runtime_error("error writing output file: " + path);
    }
    std::unique_ptr<std::ofstream> file;
    std::string path;
};

fs::path cache_file_path(const RunConfig& cfg) {
    return fs::path(cfg.cache_dir) / kCacheFileName;
}

// Build the sieve a command needs. With a cache directory set, an existing
// cache whose recorded limit is below the requested one is an explicit
// error (never silently upgrade); otherwise the cache is spot-checked
// against the fresh sieve.
PrimeTable prepare_table(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) {
        const fs::path cache = cache_file_path(cfg);
        if (fs::exists(cache)) {
            const PiCacheInfo info = read_pi_cache_info(cache);
            if (info.limit < cfg.limit)
                throw std::domain_error(
                    "cache at " + cache.string() + " covers limit=" + std::to_string(info.limit) +
                    " but limit=" + std::to_string(cfg.limit) +
                    " was requested; run `sieve --limit " + std::to_string(cfg.limit) +
                    "` to re-sieve");
            PrimeTable table = PrimeTable::build(cfg.limit);
            validate_pi_checkpoint_cache(cache, table);
            return table;
        }
    }
    return PrimeTable::build(cfg.limit);
}

ErrorConvention convention_from(const RunConfig& cfg) {
    ErrorConvention conv;
    conv.unity_offset = !cfg.no_unity_offset;
    conv.range_start = start_or(cfg, 3);
    conv.range_end = cfg.hi ? cfg.hi : cfg.limit;
    conv.target = (cfg.target == "li") ? FitTarget::li_target : FitTarget::exact_pi;
    return conv;
}

int cmd_sieve(const RunConfig& cfg) {
    PrimeTable table = PrimeTable::build(cfg.limit);
    if (!cfg.cache_dir.empty()) {
        fs::create_directories(cfg.cache_dir);
        write_pi_checkpoint_cache(table, cache_file_path(cfg));
    }
    Output out(cfg.out);
    out.stream() << "limit=" << table.limit() << " primes=" << table.primes().size() << "\n";
    out.finish();
    return 0;
}

int cmd_table1(const RunConfig& cfg, bool use_default_bs) {
    PrimeTable table = prepare_table(cfg);
    const ErrorConvention conv = convention_from(cfg);
    std::span<const double> bs = use_default_bs ? table1_default_bs()
                                                : std::span<const double>(cfg.b_list);
    const auto rows = table1(bs, conv, table);
    Output out(cfg.out);
    out.stream() << "B,avg_error\n";
    for (const auto& [b, avg] : rows)
        out.stream() << csv::format(b) << "," << csv::format(avg) << "\n";
    out.finish();
    return 0;
}

int cmd_fit(const RunConfig& cfg, std::optional<double> bracket_lo,
            std::optional<double> bracket_hi) {
    PrimeTable table = prepare_table(cfg);
    Output out(cfg.out);
    if (cfg.target == "li") {
        ErrorConvention conv = li_fit_convention();
        conv.range_start = start_or(cfg, 5);
        conv.range_end = cfg.hi ? cfg.hi : cfg.limit;
        const FitResult fit = fit_li_target(conv, table, cfg.tol, bracket_lo.value_or(1.0),
                                            bracket_hi.value_or(1.2));
        out.stream() << "target=li B0=" << csv::format(fit.b0)
                     << " residual=" << csv::format(fit.residual)
                     << " iterations=" << fit.iterations << "\n";
    } else {
        const ErrorConvention conv = convention_from(cfg);
        const FitResult fit = solve_b0(bracket_lo.value_or(1.0825), bracket_hi.value_or(1.0850),
                                       cfg.tol, conv, table);
        out.stream() << "target=pi B0=" << csv::format(fit.b0)
                     << " residual=" << csv::format(fit.residual)
                     << " iterations=" << fit.iterations
                     << " delta=" << csv::format(kLegendreConstant - fit.b0) << "\n";
    }
    out.finish();
    return 0;
}

int cmd_bias(const RunConfig& cfg, std::uint64_t lo) {
    PrimeTable table = prepare_table(cfg);
    const std::uint64_t hi = cfg.hi ? cfg.hi : cfg.limit;
    const BiasReport report = bias_scan(lo, hi, table);
    Output out(cfg.out);
    out.stream() << "violations=" << report.violations.size()
                 << " min_gap=" << csv::format(report.min_gap)
                 << " min_at=" << csv::format(report.min_at) << "\n";
    for (double v : report.violations) out.stream() << "violation," << csv::format(v) << "\n";
    out.finish();
    return 0;
}

int cmd_tracks(const RunConfig& cfg, bool no_li) {
    PrimeTable table = prepare_table(cfg);
    const ErrorConvention conv = convention_from(cfg);
    const std::uint64_t hi = cfg.hi ? cfg.hi : cfg.limit;
    const auto prime_span = table.primes_between(std::max<std::uint64_t>(start_or(cfg, 3), 2), hi);
    std::vector<double> xs(prime_span.begin(), prime_span.end());
    std::vector<LegendreModel> models;
    for (double b : cfg.b_list) models.push_back({1.0, b});
    const TrackSeries series = error_tracks(xs, models, !no_li, conv, table);
    Output out(cfg.out);
    write_tracks_csv(out.stream(), series);
    out.finish();
    return 0;
}

int cmd_crossover(const RunConfig& cfg, int window, std::uint64_t stride) {
    PrimeTable table = prepare_table(cfg);
    const CrossoverReport report = crossover_report(cfg.limit, window, table, stride);
    Output out(cfg.out);
    out.stream() << "window=" << report.window << " stride=" << report.stride << " crossover_x=";
    if (report.crossover_x)
        out.stream() << *report.crossover_x;
    else
        out.stream() << "none";
    if (report.li_halves_error_at_1e7)
        out.stream() << " li_halves_error_at_1e7="
                     << (*report.li_halves_error_at_1e7 ? "true" : "false");
    out.stream() << "\n";
    out.stream() << "x,li_error,legendre_error\n";
    for (const auto& s : report.key_points)
        out.stream() << s.x << "," << csv::format(s.li_error) << ","
                     << csv::format(s.legendre_error) << "\n";
    out.finish();
    return 0;
}

int cmd_riemann(const RunConfig& cfg, double x, bool check_inversion, bool magnitudes,
                std::int64_t explicit_zeros) {
    PrimeTable table = prepare_table(cfg);
    Output out(cfg.out);
    int rc = 0;
    if (check_inversion) {
        const double v = pi_from_f_inversion(x, table);
        const double pi_x = static_cast<double>(table.pi(x));
        const bool integer_x = (x == std::floor(x));
        const bool is_p = integer_x && x >= 2 && x <= static_cast<double>(table.limit()) &&
                          table.is_prime(static_cast<std::uint64_t>(x));
        if (std::fabs(v - pi_x) <= 1e-9) {
            out.stream() << "pi=" << csv::format(pi_x) << " exact\n";
        } else if (is_p && std::fabs(v - (pi_x - 0.5)) <= 1e-9) {
            out.stream() << "pi=" << csv::format(v) << " half-count (x is prime)\n";
        } else {
            out.stream() << "pi=" << csv::format(v) << " mismatch sieve=" << csv::format(pi_x)
                         << "\n";
            rc = 3;
        }
    }
    if (magnitudes || explicit_zeros >= 0) {
        const ZeroTable zeros = ZeroTable::load(fs::path(cfg.zeros_file));
        if (magnitudes) {
            const BiasMagnitudeReport r = bias_magnitude_comparison(x, zeros, table);
            out.stream() << "n2_term=" << csv::format(r.n2_term)
                         << " n2_approx=" << csv::format(r.n2_approx)
                         << " rho1_pair=" << csv::format(r.rho1_pair)
                         << " rho1_bound=" << csv::format(r.rho1_bound)
                         << " squares_dominate=" << (r.squares_dominate ? "true" : "false")
                         << "\n";
        }
        if (explicit_zeros >= 0) {
            const double approx =
                pi_explicit_approx(x, static_cast<std::size_t>(explicit_zeros), zeros);
            const double pi_x = static_cast<double>(table.pi(x));
            out.stream() << "zeros=" << explicit_zeros << " approx=" << csv::format(approx)
                         << " pi=" << csv::format(pi_x)
                         << " abs_residual=" << csv::format(std::fabs(approx - pi_x)) << "\n";
        }
    }
    out.finish();
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime counting, the Legendre approximation, and arithmetic bias"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::optional<double> bracket_lo, bracket_hi;
    std::uint64_t bias_lo = 8;
    bool no_li = false;
    int window = 20;
    std::uint64_t stride = 10'000;
    double riemann_x = 100.0;
    bool check_inversion = false, magnitudes = false;
    std::int64_t explicit_zeros = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--limit", cfg.limit, "sieve limit (inclusive)");
        sub->add_option("--start", cfg.start, "first prime included in averages/tracks");
        sub->add_option("--hi", cfg.hi, "upper end of the sample range (default: limit)");
        sub->add_option("--tol", cfg.tol, "bisection tolerance");
        sub->add_option("--cache-dir", cfg.cache_dir, "pi-checkpoint cache directory")
            ->envname("LEGENDRE_CACHE_DIR");
        sub->add_option("--out", cfg.out, "output path ('-' = stdout)");
        sub->add_flag("--no-unity-offset", cfg.no_unity_offset,
                      "do not subtract 1 from each sample error");
        sub->add_option("--target", cfg.target, "fit/averaging target: pi or li")
            ->check(CLI::IsMember({"pi", "li"}));
        sub->add_option("--b-list", cfg.b_list_csv,
                        "comma-separated B values (empty string = empty list)");
        sub->add_option("--zeros-file", cfg.zeros_file, "zeta-zero ordinates file");
    };

    CLI::App* sieve = app.add_subcommand("sieve", "build the prime table and cache checkpoints");
    add_common(sieve);

    CLI::App* table1_cmd = app.add_subcommand("table1", "average error for a list of B values");
    add_common(table1_cmd);

    CLI::App* fit = app.add_subcommand("fit", "bisection for the root B0 of the average error");
    add_common(fit);
    fit->add_option("--bracket-lo", bracket_lo, "bisection bracket lower end");
    fit->add_option("--bracket-hi", bracket_hi, "bisection bracket upper end");

    CLI::App* bias = app.add_subcommand("bias", "scan li(x) - pi(x) for sign violations");
    add_common(bias);
    bias->add_option("--lo", bias_lo, "scan lower end");

    CLI::App* tracks = app.add_subcommand("tracks", "per-x error tracks as CSV");
    add_common(tracks);
    tracks->add_flag("--no-li", no_li, "omit the li track");

    CLI::App* crossover = app.add_subcommand("crossover", "where li overtakes the Legendre fit");
    add_common(crossover);
    crossover->add_option("--window", window, "consecutive winning samples required");
    crossover->add_option("--stride", stride, "grid stride");

    CLI::App* riemann = app.add_subcommand("riemann", "explicit-formula demonstrations");
    add_common(riemann);
    riemann->add_option("--x", riemann_x, "evaluation point");
    riemann->add_flag("--check-inversion", check_inversion,
                      "compare the Mobius inversion of f against sieve pi");
    riemann->add_flag("--magnitudes", magnitudes,
                      "compare the squares-of-primes term against the first zero's");
    riemann->add_option("--zeros", explicit_zeros,
                        "explicit-formula partial sum over this many zeros");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        cfg.b_list = parse_b_list(cfg.b_list_csv);
        if (sieve->parsed()) return cmd_sieve(cfg);
        if (table1_cmd->parsed()) return cmd_table1(cfg, table1_cmd->count("--b-list") == 0);
        if (fit->parsed()) return cmd_fit(cfg, bracket_lo, bracket_hi);
        if (bias->parsed()) return cmd_bias(cfg, bias_lo);
        if (tracks->parsed()) return cmd_tracks(cfg, no_li);
        if (crossover->parsed()) return cmd_crossover(cfg, window, stride);
        if (riemann->parsed())
            return cmd_riemann(cfg, riemann_x, check_inversion, magnitudes, explicit_zeros);
    } catch (const bracket_error& e) {
        std::cerr << "error (bracketing): " << e.what() << "\n";
        return 3;
    } catch (const accuracy_error& e) {
        std::cerr << "error (accuracy): " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
