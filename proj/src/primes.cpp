#include "legendre/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "legendre/errors.hpp"

namespace legendre {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// lcm(1..29); 2^29 <= 10^9 < 2^30 so no exponent above 29 ever occurs
// within the hard sieve cap.
constexpr u64 lcm_1_to_29() {
    u64 l = 1;
    for (u64 k = 2; k <= 29; ++k) {
        u64 a = l, b = k;
        while (b) { u64 t = a % b; a = b; b = t; }
        l = l / a * k;
    }
    return l;
}

// Common denominator for all weights 1/k and half-weights 1/(2k).
constexpr u64 kWeightDenom = 2 * lcm_1_to_29();

}  // namespace

PrimeTable PrimeTable::build(u64 limit, u64 checkpoint_stride, u64 segment_size) {
    if (limit < 2) throw std::domain_error("PrimeTable::build: limit must be >= 2");
    if (limit > kHardLimitCap)
        throw resource_error("PrimeTable::build: limit " + std::to_string(limit) +
                             " exceeds cap " + std::to_string(kHardLimitCap));
    if (checkpoint_stride < 1)
        throw std::domain_error("PrimeTable::build: checkpoint stride must be >= 1");
    if (segment_size < 64) segment_size = 64;

    PrimeTable t;
    t.limit_ = limit;
    t.stride_ = checkpoint_stride;

    // base primes up to sqrt(limit) by a plain sieve
    const u64 root = isqrt_u64(limit);
    std::vector<std::uint8_t> small(root + 1, 0);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i) {
        if (small[i]) continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += i) small[j] = 1;
    }

    // independent segments, processed round-robin by a small pool and
    // merged in segment order, so the table is identical for any thread
    // count
    const u64 seg_count = (limit - 2) / segment_size + 1;
    std::vector<std::vector<u64>> found(seg_count);
    const unsigned threads = static_cast<unsigned>(std::min<u64>(
        std::max(1u, std::thread::hardware_concurrency()), seg_count));

    auto worker = [&](unsigned tid) {
        std::vector<std::uint8_t> mark(segment_size);
        for (u64 s = tid; s < seg_count; s += threads) {
            const u64 lo = 2 + s * segment_size;
            const u64 hi = std::min(lo + segment_size - 1, limit);
            const u64 n = hi - lo + 1;
            std::fill(mark.begin(), mark.begin() + n, 0);
            for (u64 p : base) {
                if (p * p > hi) break;
                u64 start = std::max(p * p, (lo + p - 1) / p * p);
                for (u64 m = start; m <= hi; m += p) mark[m - lo] = 1;
            }
            for (u64 m = lo; m <= hi; ++m)
                if (!mark[m - lo]) found[s].push_back(m);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
        worker(0);
        for (auto& th : pool) th.join();
    }

    // pi(x) ~ x/(log x - 1.1) over-reserve slightly
    if (limit >= 100) {
        double est = static_cast<double>(limit) / (std::log(static_cast<double>(limit)) - 1.1);
        t.primes_.reserve(static_cast<std::size_t>(est * 1.05) + 16);
    }
    for (auto& seg : found) {
        t.primes_.insert(t.primes_.end(), seg.begin(), seg.end());
        std::vector<u64>().swap(seg);  // release as we go
    }

    // checkpoints at stride, 2*stride, ... <= limit
    std::size_t idx = 0;
    for (u64 x = checkpoint_stride; x <= limit; x += checkpoint_stride) {
        while (idx < t.primes_.size() && t.primes_[idx] <= x) ++idx;
        t.checkpoints_.emplace_back(x, static_cast<u64>(idx));
    }
    return t;
}

u64 PrimeTable::pi(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("pi: x must be >= 0");
    if (x > static_cast<double>(limit_))
        throw std::out_of_range("pi: x exceeds table limit " + std::to_string(limit_) +
                                "; rebuild the sieve with a larger limit");
    const u64 n = static_cast<u64>(std::floor(x));
    if (n < 2) return 0;

    std::size_t count = 0;
    const std::size_t k = static_cast<std::size_t>(n / stride_);
    if (k >= 1 && k <= checkpoints_.size()) count = checkpoints_[k - 1].second;
    while (count < primes_.size() && primes_[count] <= n) ++count;
    return count;
}

std::span<const u64> PrimeTable::primes_between(u64 lo, u64 hi) const {
    if (lo < 2 || lo > hi) throw std::domain_error("primes_between: need 2 <= lo <= hi");
    if (hi > limit_)
        throw std::out_of_range("primes_between: hi exceeds table limit " +
                                std::to_string(limit_));
    auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(first, primes_.end(), hi);
    return {primes_.data() + (first - primes_.begin()),
            static_cast<std::size_t>(last - first)};
}

bool PrimeTable::is_prime(u64 n) const {
    if (n > limit_) throw std::out_of_range("is_prime: n exceeds table limit");
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::index_of_first_prime_at_least(u64 lo) const {
    return static_cast<std::size_t>(
        std::lower_bound(primes_.begin(), primes_.end(), lo) - primes_.begin());
}

int mobius(u64 n) {
    if (n < 1) throw std::domain_error("mobius: n must be >= 1");
    int sign = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

double f_weighted_count_floor(u64 floor_value, bool boundary_exact, const PrimeTable& table) {
    if (floor_value > table.limit())
        throw std::out_of_range("f_weighted_count: x exceeds table limit");
    const u64 N = floor_value;
    if (N < 2) return 0.0;

    // numerator over kWeightDenom; |num| <= #terms * denom fits i128 easily
    i128 num = 0;
    for (u64 p : table.primes()) {
        if (p > N) break;
        unsigned k = 1;
        u64 pk = p;
        while (true) {
            if (boundary_exact && pk == N)
                num += kWeightDenom / (2 * k);   // half weight at the boundary
            else
                num += kWeightDenom / k;
            if (pk > N / p) break;               // pk * p would exceed N
            pk *= p;
            ++k;
        }
    }
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(kWeightDenom));
}

double f_weighted_count(double x, const PrimeTable& table) {
    if (!(x >= 0.0)) throw std::domain_error("f_weighted_count: x must be >= 0");
    if (x > static_cast<double>(table.limit()))
        throw std::out_of_range("f_weighted_count: x exceeds table limit");
    const double fl = std::floor(x);
    return f_weighted_count_floor(static_cast<u64>(fl), fl == x, table);
}

std::vector<PrimePowerWeight> prime_powers_up_to(double x, const PrimeTable& table) {
    if (!(x >= 0.0)) throw std::domain_error("prime_powers_up_to: x must be >= 0");
    if (x > static_cast<double>(table.limit()))
        throw std::out_of_range("prime_powers_up_to: x exceeds table limit");
    const u64 N = static_cast<u64>(std::floor(x));
    std::vector<PrimePowerWeight> out;
    for (u64 p : table.primes()) {
        if (p > N) break;
        unsigned k = 1;
        u64 pk = p;
        while (true) {
            out.push_back({p, k});
            if (pk > N / p) break;
            pk *= p;
            ++k;
        }
    }
    return out;
}

u64 floor_kth_root(u64 n, unsigned k) {
    if (k == 0) throw std::domain_error("floor_kth_root: k must be >= 1");
    if (k == 1 || n < 2) return n;
    if (k >= 64) return 1;
    u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pow_le = [n, k](u64 b) {
        i128 v = 1;
        for (unsigned i = 0; i < k; ++i) {
            v *= b;
            if (v > static_cast<i128>(n)) return false;
        }
        return true;
    };
    while (r > 1 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

// --- cache file -----------------------------------------------------------

void write_pi_checkpoint_cache(const PrimeTable& table, std::ostream& out) {
    out << "# pi-table v1 limit=" << table.limit() << " stride=" << table.checkpoint_stride()
        << "\n";
    for (const auto& [x, c] : table.checkpoints()) out << x << "," << c << "\n";
}

void write_pi_checkpoint_cache(const PrimeTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open cache file for writing: " + path.string());
    write_pi_checkpoint_cache(table, out);
    out.flush();
    if (!out) throw std::runtime_error("error writing cache file: " + path.string());
}

namespace {

struct ParsedCache {
    PiCacheInfo info;
    std::vector<std::pair<u64, u64>> entries;
};

ParsedCache parse_pi_cache(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cache file: " + path.string());
    std::string header;
    std::getline(in, header);
    ParsedCache pc;
    if (std::sscanf(header.c_str(), "# pi-table v1 limit=%llu stride=%llu",
                    reinterpret_cast<unsigned long long*>(&pc.info.limit),
                    reinterpret_cast<unsigned long long*>(&pc.info.stride)) != 2)
        throw std::runtime_error("bad cache header in " + path.string() + ": " + header);
    std::string line;
    u64 prev_x = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        u64 x = 0, c = 0;
        char comma = 0;
        std::istringstream ls(line);
        if (!(ls >> x >> comma >> c) || comma != ',')
            throw std::runtime_error("bad cache line: " + line);
        if (x <= prev_x) throw std::runtime_error("cache checkpoints not ascending at x=" +
                                                  std::to_string(x));
        prev_x = x;
        pc.entries.emplace_back(x, c);
    }
    pc.info.entries = pc.entries.size();
    return pc;
}

}  // namespace

PiCacheInfo read_pi_cache_info(const std::filesystem::path& path) {
    return parse_pi_cache(path).info;
}

PiCacheInfo validate_pi_checkpoint_cache(const std::filesystem::path& path,
                                         const PrimeTable& sieve) {
    ParsedCache pc = parse_pi_cache(path);

    // first and last checkpoints always, plus 3 deterministic random picks
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < pc.entries.size(); ++i)
        if (pc.entries[i].first <= sieve.limit()) candidates.push_back(i);
    if (candidates.empty() && !pc.entries.empty())
        throw std::runtime_error("cache has no checkpoints within sieve limit");

    auto check_entry = [&](std::size_t idx) {
        const auto& [x, c] = pc.entries[idx];
        const u64 expect = sieve.pi(static_cast<double>(x));
        if (c != expect)
            throw std::runtime_error("cache mismatch at x=" + std::to_string(x) + ": file says " +
                                     std::to_string(c) + ", sieve says " + std::to_string(expect));
    };
    if (!candidates.empty()) {
        check_entry(candidates.front());
        check_entry(candidates.back());
        std::mt19937_64 rng(0xC0FFEEULL ^ sieve.limit() ^ (pc.info.stride << 20));
        for (int i = 0; i < 3; ++i) check_entry(candidates[rng() % candidates.size()]);
    }
    return pc.info;
}

}  // namespace legendre
