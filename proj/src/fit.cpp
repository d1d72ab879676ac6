#include "legendre/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "legendre/errors.hpp"
#include "legendre/logint.hpp"

namespace legendre {

namespace {

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double sample_error(double x, double b, double target, double offset) {
    return x / (std::log(x) - b) - target - offset;
}

void check_b_against_range(double b, const ErrorConvention& conv) {
    if (!(b < std::log(static_cast<double>(conv.range_start))))
        throw std::domain_error("average_error: B must be < log(range_start) = " +
                                std::to_string(std::log(static_cast<double>(conv.range_start))));
}

constexpr std::size_t kReduceChunk = 4096;  // fixed, thread-count independent

const std::array<double, 10> kTable1Bs = {1.0700, 1.0725, 1.0750, 1.0775, 1.0800,
                                          1.0825, 1.0850, 1.0875, 1.0900, 1.0925};

}  // namespace

ErrorConvention li_fit_convention() {
    ErrorConvention conv;
    conv.unity_offset = false;
    conv.range_start = 5;
    conv.target = FitTarget::li_target;
    return conv;
}

double legendre_value(double x, const LegendreModel& model) {
    if (!(model.A > 0.0)) throw std::domain_error("legendre_value: A must be > 0");
    const double denom = model.A * std::log(x) - model.B;
    if (!(denom > 0.0))
        throw std::domain_error("legendre_value: nonpositive denominator (B >= A log x at x=" +
                                std::to_string(x) + ")");
    return x / denom;
}

double pointwise_error(std::uint64_t x, double b, const ErrorConvention& conv,
                       const PrimeTable& table) {
    const double xd = static_cast<double>(x);
    const double value = legendre_value(xd, LegendreModel{1.0, b});
    double target;
    if (conv.target == FitTarget::li_target) {
        target = li(xd);
    } else {
        target = static_cast<double>(table.pi(xd));
        if (!conv.include_endpoint_primes && table.is_prime(x)) target -= 1.0;
    }
    return value - target - (conv.unity_offset ? 1.0 : 0.0);
}

ErrorSamples make_error_samples(const ErrorConvention& conv, const PrimeTable& table) {
    if (conv.range_start > conv.range_end)
        throw std::domain_error("ErrorConvention: range_start > range_end");
    const auto span = table.primes_between(std::max<std::uint64_t>(conv.range_start, 2),
                                           conv.range_end);
    if (span.empty()) throw std::domain_error("average_error: no primes in the sample range");

    ErrorSamples s;
    s.offset = conv.unity_offset ? 1.0 : 0.0;
    s.xs.reserve(span.size());
    s.targets.reserve(span.size());

    // index of span[0] in the full prime list gives pi at each sample for free
    const std::size_t base = static_cast<std::size_t>(span.data() - table.primes().data());
    for (std::size_t i = 0; i < span.size(); ++i) {
        const double p = static_cast<double>(span[i]);
        s.xs.push_back(p);
        if (conv.target == FitTarget::li_target) {
            s.targets.push_back(li(p));
        } else {
            double pi_p = static_cast<double>(base + i + 1);  // inclusive count
            if (!conv.include_endpoint_primes) pi_p -= 1.0;
            s.targets.push_back(pi_p);
        }
    }
    return s;
}

double average_error_over(const ErrorSamples& samples, double b) {
    if (samples.xs.empty()) throw std::domain_error("average_error: empty sample set");
    Kahan acc;
    for (std::size_t i = 0; i < samples.xs.size(); ++i)
        acc.add(sample_error(samples.xs[i], b, samples.targets[i], samples.offset));
    return acc.sum / static_cast<double>(samples.xs.size());
}

double average_error_over_parallel(const ErrorSamples& samples, double b, unsigned threads) {
    if (samples.xs.empty()) throw std::domain_error("average_error: empty sample set");
    const std::size_t n = samples.xs.size();
    const std::size_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

    std::vector<double> chunk_sum(chunks, 0.0);
    auto worker = [&](unsigned tid) {
        for (std::size_t ch = tid; ch < chunks; ch += threads) {
            const std::size_t lo = ch * kReduceChunk;
            const std::size_t hi = std::min(lo + kReduceChunk, n);
            Kahan acc;
            for (std::size_t i = lo; i < hi; ++i)
                acc.add(sample_error(samples.xs[i], b, samples.targets[i], samples.offset));
            chunk_sum[ch] = acc.sum;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& t : pool) t.join();

    Kahan total;  // combine in chunk order, independent of thread count
    for (double s : chunk_sum) total.add(s);
    return total.sum / static_cast<double>(n);
}

double average_error(double b, const ErrorConvention& conv, const PrimeTable& table) {
    check_b_against_range(b, conv);
    return average_error_over(make_error_samples(conv, table), b);
}

double average_error_parallel(double b, const ErrorConvention& conv, const PrimeTable& table,
                              unsigned threads) {
    check_b_against_range(b, conv);
    return average_error_over_parallel(make_error_samples(conv, table), b, threads);
}

std::vector<std::pair<double, double>> table1(std::span<const double> bs,
                                              const ErrorConvention& conv,
                                              const PrimeTable& table) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(bs.size());
    if (bs.empty()) return rows;
    const ErrorSamples samples = make_error_samples(conv, table);
    for (double b : bs) {
        check_b_against_range(b, conv);
        rows.emplace_back(b, average_error_over_parallel(samples, b));
    }
    return rows;
}

std::span<const double> table1_default_bs() { return kTable1Bs; }

FitResult solve_root_over(const ErrorSamples& samples, double bracket_lo, double bracket_hi,
                          double tol, const ErrorConvention& conv_used) {
    if (!(tol > 0.0)) throw std::domain_error("solve_b0: tol must be > 0");
    if (bracket_lo > bracket_hi) throw std::domain_error("solve_b0: bracket_lo > bracket_hi");

    FitResult result;
    result.convention = conv_used;

    const double f_lo = average_error_over(samples, bracket_lo);
    if (bracket_lo == bracket_hi) {
        if (f_lo == 0.0) {
            result.b0 = bracket_lo;
            result.residual = 0.0;
            return result;
        }
        throw bracket_error("solve_b0: degenerate bracket with nonzero average error");
    }
    const double f_hi = average_error_over(samples, bracket_hi);
    if (!(f_lo < 0.0) || !(f_hi > 0.0))
        throw bracket_error("solve_b0: no sign change across bracket (avg(" +
                            std::to_string(bracket_lo) + ")=" + std::to_string(f_lo) + ", avg(" +
                            std::to_string(bracket_hi) + ")=" + std::to_string(f_hi) + ")");

    double lo = bracket_lo, hi = bracket_hi;
    result.bracket_history.emplace_back(lo, hi);
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            throw accuracy_error("solve_b0: tol below achievable bisection precision",
                                 {0.5 * (lo + hi), 0.0});
        (average_error_over(samples, mid) < 0.0 ? lo : hi) = mid;
        result.bracket_history.emplace_back(lo, hi);
        ++result.iterations;
    }
    result.b0 = 0.5 * (lo + hi);
    result.residual = average_error_over(samples, result.b0);
    return result;
}

FitResult solve_b0(double bracket_lo, double bracket_hi, double tol, const ErrorConvention& conv,
                   const PrimeTable& table) {
    check_b_against_range(bracket_hi, conv);
    return solve_root_over(make_error_samples(conv, table), bracket_lo, bracket_hi, tol, conv);
}

FitResult fit_li_target(const ErrorConvention& conv, const PrimeTable& table, double tol,
                        double bracket_lo, double bracket_hi) {
    if (conv.target != FitTarget::li_target)
        throw std::domain_error("fit_li_target: convention target must be li_target");
    check_b_against_range(bracket_hi, conv);
    return solve_root_over(make_error_samples(conv, table), bracket_lo, bracket_hi, tol, conv);
}

double chebyshev_difference(double x, const PrimeTable& table) {
    if (!(x >= 2.0)) throw std::domain_error("chebyshev_difference: requires x >= 2");
    const std::uint64_t pi_x = table.pi(x);
    if (pi_x == 0) throw std::domain_error("chebyshev_difference: pi(x) = 0");
    return x / static_cast<double>(pi_x) - std::log(x);
}

}  // namespace legendre
