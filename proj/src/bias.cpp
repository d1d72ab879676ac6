#include "legendre/bias.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "legendre/csv.hpp"

namespace legendre {

BiasReport bias_scan(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                     EvalAccuracy acc) {
    if (lo < 2 || lo >= hi) throw std::domain_error("bias_scan: need 2 <= lo < hi");
    if (hi > table.limit()) throw std::out_of_range("bias_scan: hi exceeds table limit");

    BiasReport report;
    report.lo = lo;
    report.hi = hi;
    report.min_gap = std::numeric_limits<double>::infinity();

    auto visit = [&](double x) {
        const double gap = li(x, acc) - static_cast<double>(table.pi(x));
        if (gap <= 0.0) report.violations.push_back(x);
        if (gap < report.min_gap) {
            report.min_gap = gap;
            report.min_at = x;
        }
    };

    // dense integers up to 1000, primes beyond
    const std::uint64_t dense_hi = std::min<std::uint64_t>(hi, 1000);
    for (std::uint64_t x = lo; x <= dense_hi; ++x) visit(static_cast<double>(x));
    if (hi > 1000)
        for (std::uint64_t p : table.primes_between(std::max<std::uint64_t>(lo, 1001), hi))
            visit(static_cast<double>(p));
    return report;
}

TrackSeries error_tracks(std::span<const double> xs, std::span<const LegendreModel> models,
                         bool include_li, const ErrorConvention& conv, const PrimeTable& table) {
    TrackSeries series;
    series.xs.assign(xs.begin(), xs.end());

    std::set<std::string> seen;
    auto add_track = [&](std::string label, std::vector<double> values) {
        if (!seen.insert(label).second)
            throw std::invalid_argument("error_tracks: duplicate track label " + label);
        series.tracks.emplace_back(std::move(label), std::move(values));
    };

    const double offset = conv.unity_offset ? 1.0 : 0.0;
    for (const LegendreModel& m : models) {
        std::vector<double> values;
        values.reserve(xs.size());
        for (double x : xs) {
            double target;
            if (conv.target == FitTarget::li_target) {
                target = li(x);
            } else {
                target = static_cast<double>(table.pi(x));
                if (!conv.include_endpoint_primes &&
                    x == std::floor(x) && table.is_prime(static_cast<std::uint64_t>(x)))
                    target -= 1.0;
            }
            values.push_back(legendre_value(x, m) - target - offset);
        }
        add_track(m.A == 1.0 ? "B=" + csv::format(m.B)
                             : "A=" + csv::format(m.A) + ",B=" + csv::format(m.B),
                  std::move(values));
    }
    if (include_li) {
        std::vector<double> values;
        values.reserve(xs.size());
        for (double x : xs)
            values.push_back(li(x) - static_cast<double>(table.pi(x)) - offset);
        add_track("li", std::move(values));
    }
    return series;
}

CrossoverReport crossover_report(std::uint64_t limit, int window, const PrimeTable& table,
                                 std::uint64_t stride) {
    if (limit < 7'000'000)
        throw std::domain_error("crossover_report: limit must be >= 7e6 for a meaningful report");
    if (window < 1) throw std::domain_error("crossover_report: window must be >= 1");
    if (stride < 1) throw std::domain_error("crossover_report: stride must be >= 1");
    if (limit > table.limit())
        throw std::out_of_range("crossover_report: limit exceeds table limit");

    CrossoverReport report;
    report.limit = limit;
    report.stride = stride;
    report.window = window;

    const std::uint64_t key_xs[] = {1'000'000, 3'000'000, 6'000'000, 10'000'000};
    int run = 0;
    for (std::uint64_t x = stride; x <= limit; x += stride) {
        const double xd = static_cast<double>(x);
        const double pi_x = static_cast<double>(table.pi(xd));
        const double e_li = std::fabs(li(xd) - pi_x);
        const double e_lg =
            std::fabs(legendre_value(xd, LegendreModel{1.0, kLegendreConstant}) - pi_x - 1.0);
        if (e_li < e_lg) {
            ++run;
            if (run == window && !report.crossover_x)
                report.crossover_x = x - static_cast<std::uint64_t>(window - 1) * stride;
        } else {
            run = 0;
        }
        for (std::uint64_t k : key_xs)
            if (x == k) report.key_points.push_back({x, e_li, e_lg});
        if (x == 10'000'000) report.li_halves_error_at_1e7 = (e_li <= 0.5 * e_lg);
    }
    return report;
}

void write_tracks_csv(std::ostream& out, const TrackSeries& series) {
    out << "x";
    for (const auto& [label, values] : series.tracks) out << "," << label;
    out << "\n";
    for (std::size_t i = 0; i < series.xs.size(); ++i) {
        out << csv::format(series.xs[i]);
        for (const auto& [label, values] : series.tracks) out << "," << csv::format(values[i]);
        out << "\n";
    }
}

}  // namespace legendre
