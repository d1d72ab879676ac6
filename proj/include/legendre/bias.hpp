#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "legendre/fit.hpp"
#include "legendre/logint.hpp"
#include "legendre/primes.hpp"

namespace legendre {

/// Aligned per-x error tracks for several approximation models; the data
/// behind the error-tracking figures. Labels are unique.
struct TrackSeries {
    std::vector<double> xs;
    std::vector<std::pair<std::string, std::vector<double>>> tracks;
};

/// Result of a li(x) > pi(x) scan.
struct BiasReport {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    double min_gap = 0.0;   // minimum of li(x) - pi(x) over the samples
    double min_at = 0.0;    // sample where the minimum occurs
    std::vector<double> violations;  // samples with gap <= 0 (empty iff min_gap > 0)
};

/// Evaluate li(x) - pi(x) at every integer in [lo, min(hi, 1000)] (dense
/// where the claim's boundary near x=8 lives) and at every prime in
/// (1000, hi]. Requires 2 <= lo < hi <= table.limit().
BiasReport bias_scan(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                     EvalAccuracy acc = {});

/// Pointwise errors for each model at each x, plus a "li" track
/// (li(x) - pi(x) - offset) when include_li. Model labels are "B=<value>".
TrackSeries error_tracks(std::span<const double> xs, std::span<const LegendreModel> models,
                         bool include_li, const ErrorConvention& conv, const PrimeTable& table);

struct CrossoverSample {
    std::uint64_t x = 0;
    double li_error = 0.0;        // |li(x) - pi(x)|
    double legendre_error = 0.0;  // |x/(log x - 1.08366) - pi(x) - 1|
};

struct CrossoverReport {
    std::uint64_t limit = 0;
    std::uint64_t stride = 0;
    int window = 0;
    // first grid point from which li's error stays below Legendre's for
    // `window` consecutive samples
    std::optional<std::uint64_t> crossover_x;
    std::vector<CrossoverSample> key_points;  // at 1e6, 3e6, 6e6, 1e7 (within limit)
    // the "noticeably worse" yardstick: li error <= half the Legendre error
    // at x = 1e7 (reported as-is; false on this data, the ratio is ~0.6)
    std::optional<bool> li_halves_error_at_1e7;
};

/// Compare |li - pi| against the Legendre-model error on a uniform grid.
/// Requires limit >= 7e6 (for a meaningful report), window >= 1, and a
/// sieve covering limit.
CrossoverReport crossover_report(std::uint64_t limit, int window, const PrimeTable& table,
                                 std::uint64_t stride = 10'000);

/// Figure CSV: header `x,<label1>,<label2>,...`, one full-precision row
/// per sample.
void write_tracks_csv(std::ostream& out, const TrackSeries& series);

}  // namespace legendre
