#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace legendre {

/// One prime power p^k with its Chebyshev-style weight 1/k
/// (Lambda(p^k)/log(p^k) = 1/k, exactly rational).
struct PrimePowerWeight {
    std::uint64_t base;      // prime p
    unsigned exponent;       // k >= 1, p^k fits in 64 bits
    double weight() const { return 1.0 / static_cast<double>(exponent); }
};

/// Immutable table of all primes up to `limit`, with cumulative prime
/// counts checkpointed at a fixed stride. Built once by a segmented
/// sieve of Eratosthenes; every query afterwards is pure and reentrant,
/// so a table can be shared freely across threads.
class PrimeTable {
public:
    static constexpr std::uint64_t kDefaultCheckpointStride = 10'000;
    static constexpr std::uint64_t kDefaultSegmentSize = 1u << 20;
    static constexpr std::uint64_t kHardLimitCap = 1'000'000'000;

    /// Sieve everything up to `limit` (inclusive).
    /// Throws std::domain_error for limit < 2 and resource_error above the cap.
    static PrimeTable build(std::uint64_t limit,
                            std::uint64_t checkpoint_stride = kDefaultCheckpointStride,
                            std::uint64_t segment_size = kDefaultSegmentSize);

    std::uint64_t limit() const { return limit_; }
    std::uint64_t checkpoint_stride() const { return stride_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    /// Checkpoints (x, pi(x)) at x = stride, 2*stride, ... <= limit.
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& checkpoints() const {
        return checkpoints_;
    }

    /// Exact prime count pi(x) = #{p prime : p <= x}, evaluated as
    /// pi(floor(x)). Starts from the nearest checkpoint below x and scans.
    /// Throws std::domain_error for x < 0, std::out_of_range for x > limit.
    std::uint64_t pi(double x) const;

    /// All primes p with lo <= p <= hi, ascending, as a view into the table.
    /// Requires 2 <= lo <= hi; throws std::out_of_range for hi > limit.
    std::span<const std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) const;

    /// Membership test by binary search. Throws std::out_of_range above limit.
    bool is_prime(std::uint64_t n) const;

    /// Index of the first prime >= lo (== primes().size() if none).
    std::size_t index_of_first_prime_at_least(std::uint64_t lo) const;

private:
    PrimeTable() = default;

    std::uint64_t limit_ = 0;
    std::uint64_t stride_ = kDefaultCheckpointStride;
    std::vector<std::uint64_t> primes_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> checkpoints_;
};

/// Mobius function mu(n): 0 if n has a squared prime factor, else
/// (-1)^(number of prime factors). Throws std::domain_error for n < 1.
int mobius(std::uint64_t n);

/// Riemann's weighted prime-power count
///
///     f(x) = sum over prime powers p^k <= x of 1/k,
///
/// with the term at p^k exactly equal to x counted with half weight
/// (the average of the left and right limits). Accumulated in exact
/// rational arithmetic (128-bit numerator over a fixed denominator),
/// converted to double only on return, so the result is bit-reproducible.
/// Requires 0 <= x <= table.limit().
double f_weighted_count(double x, const PrimeTable& table);

/// Same sum with the boundary made explicit: the argument is known to be
/// the integer `floor_value`, and `boundary_exact` says whether the true
/// (real) argument equals it exactly. Lets callers evaluate f at exact
/// n-th roots without round-tripping through floating point.
double f_weighted_count_floor(std::uint64_t floor_value, bool boundary_exact,
                              const PrimeTable& table);

/// Enumerate the prime powers p^k <= x, ascending in p then k.
std::vector<PrimePowerWeight> prime_powers_up_to(double x, const PrimeTable& table);

/// Largest r with r^k <= n (integer arithmetic, no rounding surprises).
std::uint64_t floor_kth_root(std::uint64_t n, unsigned k);

// --- pi-checkpoint cache file -------------------------------------------
//
// Text format:
//   # pi-table v1 limit=<N> stride=<S>
//   <x>,<pi(x)>          one line per checkpoint, ascending in x

struct PiCacheInfo {
    std::uint64_t limit = 0;
    std::uint64_t stride = 0;
    std::size_t entries = 0;
};

void write_pi_checkpoint_cache(const PrimeTable& table, std::ostream& out);
void write_pi_checkpoint_cache(const PrimeTable& table, const std::filesystem::path& path);

/// Parse a cache file, check the header and monotonicity, and spot-check
/// three deterministically chosen checkpoints against the given sieve.
/// Throws std::runtime_error on any mismatch or malformed content.
PiCacheInfo validate_pi_checkpoint_cache(const std::filesystem::path& path,
                                         const PrimeTable& sieve);

/// Header-only peek at a cache file (limit/stride/entry count).
PiCacheInfo read_pi_cache_info(const std::filesystem::path& path);

}  // namespace legendre
