#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "legendre/primes.hpp"

namespace legendre {

/// Legendre's published constant (the value under test throughout).
inline constexpr double kLegendreConstant = 1.08366;

/// The approximation x / (A log x - B).
struct LegendreModel {
    double A = 1.0;
    double B = 0.0;
};

/// What the model error is measured against.
enum class FitTarget {
    exact_pi,   // sieve-exact pi(x), the historical setting
    li_target,  // li(x) as the stand-in truth (the counterfactual fit)
};

/// The averaging conventions behind <E(x,B)>. Defaults reproduce the
/// published table: subtract 1 (Legendre counted 1 as a prime), average
/// over the primes 3 <= x <= 10^6 with pi counted inclusively at x.
struct ErrorConvention {
    bool unity_offset = true;            // subtract 1 from each sample error
    std::uint64_t range_start = 3;       // first prime included
    std::uint64_t range_end = 1'000'000; // last sample bound
    FitTarget target = FitTarget::exact_pi;
    bool include_endpoint_primes = true; // pi(p) counts p itself; off = exclusive
};

/// Convention for the li-target counterfactual: primes from 5, no unity
/// offset (li stands in for pi itself, so there is no Legendre-style -1).
ErrorConvention li_fit_convention();

/// A located root of the averaged error, with the bisection trace.
struct FitResult {
    double b0 = 0.0;
    double residual = 0.0;  // <E> evaluated at b0
    std::vector<std::pair<double, double>> bracket_history;
    int iterations = 0;
    ErrorConvention convention;
};

/// x / (A log x - B). Throws std::domain_error when the denominator is
/// not positive (i.e. B >= A log x).
double legendre_value(double x, const LegendreModel& model);

/// E(x,B) = x/(log x - B) - target(x) - (1 if unity_offset).
/// x is expected to be a prime sample point within the table.
double pointwise_error(std::uint64_t x, double b, const ErrorConvention& conv,
                       const PrimeTable& table);

/// Mean of E(x,B) over all primes in [range_start, range_end], ascending
/// order, compensated summation. Requires B < log(range_start).
double average_error(double b, const ErrorConvention& conv, const PrimeTable& table);

/// Same value by fixed-chunk parallel reduction (deterministic: chunk
/// boundaries and the combine order do not depend on the thread count).
double average_error_parallel(double b, const ErrorConvention& conv, const PrimeTable& table,
                              unsigned threads = 0);

/// average_error applied to each B in input order.
std::vector<std::pair<double, double>> table1(std::span<const double> bs,
                                              const ErrorConvention& conv,
                                              const PrimeTable& table);

/// The ten B values of the published average-error table.
std::span<const double> table1_default_bs();

/// Bisection for the unique root B0 of <E(.,B)>. Requires
/// average_error(lo) < 0 < average_error(hi) (or a degenerate lo == hi
/// that is already a root); throws bracket_error otherwise. Monotonicity
/// of <E> in B < log(range_start) guarantees convergence.
FitResult solve_b0(double bracket_lo, double bracket_hi, double tol,
                   const ErrorConvention& conv, const PrimeTable& table);

/// The counterfactual fit: root of the li-targeted average error.
/// conv.target must be li_target (see li_fit_convention()).
FitResult fit_li_target(const ErrorConvention& conv, const PrimeTable& table,
                        double tol = 1e-6, double bracket_lo = 1.0, double bracket_hi = 1.2);

/// x/pi(x) - log x. Throws std::domain_error when pi(x) = 0.
double chebyshev_difference(double x, const PrimeTable& table);

// --- generic sample-set machinery ----------------------------------------
//
// The fitting operations all reduce to "mean of x/(log x - B) - target - c
// over fixed samples"; exposing the sample set keeps the solver reusable
// against synthetic targets in tests.

struct ErrorSamples {
    std::vector<double> xs;       // sample points (ascending primes normally)
    std::vector<double> targets;  // target value per sample
    double offset = 0.0;          // constant subtracted from every sample error
};

/// Build the sample set a convention describes (computes li targets once).
ErrorSamples make_error_samples(const ErrorConvention& conv, const PrimeTable& table);

double average_error_over(const ErrorSamples& samples, double b);
double average_error_over_parallel(const ErrorSamples& samples, double b, unsigned threads = 0);

/// Bisection over an arbitrary sample set.
FitResult solve_root_over(const ErrorSamples& samples, double bracket_lo, double bracket_hi,
                          double tol, const ErrorConvention& conv_used);

}  // namespace legendre
