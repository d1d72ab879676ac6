#include "legendre/riemann.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "legendre/errors.hpp"

namespace legendre {

namespace {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

constexpr double kFirstZeroOrdinate = 14.134725;

// Largest r with r^k <= x for real x >= 0; exact at integer boundaries.
u64 floor_root_real(double x, unsigned k) {
    const double fl = std::floor(x);
    const u64 n = static_cast<u64>(fl);
    if (fl == x) return floor_kth_root(n, k);
    // non-integer x: the root of floor(x) can only differ from the true
    // floor if x sits between r^k and ceil; floor_kth_root(floor(x)) is it
    return floor_kth_root(n, k);
}

// Does x equal r^k exactly (as a real number)?
bool is_exact_power(double x, u64 r, unsigned k) {
    if (x != std::floor(x)) return false;
    __int128 v = 1;
    for (unsigned i = 0; i < k; ++i) {
        v *= r;
        if (v > static_cast<__int128>(1) << 100) return false;
    }
    return static_cast<double>(v) == x;
}

unsigned max_inversion_order(double x) {
    // largest n with x^(1/n) >= 2, i.e. n <= log2(x)
    unsigned n = static_cast<unsigned>(std::floor(std::log2(x)));
    if (n > 62) n = 62;
    while (n < 62 && static_cast<double>(static_cast<u64>(1) << (n + 1)) <= x) ++n;
    while (n > 0 && static_cast<double>(static_cast<u64>(1) << n) > x) --n;
    return n;
}

}  // namespace

ZeroTable ZeroTable::load(std::istream& in, std::string source_hint) {
    ZeroTable t;
    t.source_ = std::move(source_hint);
    std::string line;
    double prev = 0.0;
    bool first_comment = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (first_comment && t.source_.empty()) {
                const auto body = line.find_first_not_of("# \t");
                if (body != std::string::npos) t.source_ = line.substr(body);
                first_comment = false;
            }
            continue;
        }
        std::istringstream ls(line);
        double ordinate = 0.0;
        if (!(ls >> ordinate)) throw std::runtime_error("ZeroTable: unparsable line: " + line);
        if (ordinate <= 0.0)
            throw std::runtime_error("ZeroTable: nonpositive ordinate " + line);
        if (ordinate <= prev)
            throw std::runtime_error("ZeroTable: ordinates not strictly ascending at " + line);
        prev = ordinate;
        t.zeros_.push_back({ordinate});
    }
    if (t.zeros_.empty()) throw std::runtime_error("ZeroTable: no zeros in input");
    if (std::fabs(t.zeros_.front().ordinate - kFirstZeroOrdinate) > 1e-4)
        throw std::runtime_error("ZeroTable: first ordinate " +
                                 std::to_string(t.zeros_.front().ordinate) +
                                 " is not the first zeta zero (expected ~14.134725)");
    return t;
}

ZeroTable ZeroTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ZeroTable: cannot open " + path.string());
    return load(in, "");
}

double pi_from_f_inversion(double x, const PrimeTable& table) {
    if (!(x >= 2.0)) {
        if (x >= 0.0 && x < 2.0) return 0.0;  // every f term vanishes
        throw std::domain_error("pi_from_f_inversion: x must be >= 0");
    }
    if (x > static_cast<double>(table.limit()))
        throw std::out_of_range("pi_from_f_inversion: x exceeds table limit");

    double sum = 0.0;
    const unsigned n_max = max_inversion_order(x);
    for (unsigned n = 1; n <= n_max; ++n) {
        const int mu = mobius(n);
        if (mu == 0) continue;
        const u64 root = floor_root_real(x, n);
        const bool exact = is_exact_power(x, root, n);
        sum += static_cast<double>(mu) / static_cast<double>(n) *
               f_weighted_count_floor(root, exact, table);
    }
    return sum;
}

double f_from_pi(double x, const PrimeTable& table) {
    if (!(x >= 0.0)) throw std::domain_error("f_from_pi: x must be >= 0");
    if (x < 2.0) return 0.0;
    if (x > static_cast<double>(table.limit()))
        throw std::out_of_range("f_from_pi: x exceeds table limit");

    // sum_k pi_half(x^(1/k)) / k, roots taken exactly so the half-count
    // fires only when x is literally p^k
    long double sum = 0.0L;
    const unsigned k_max = max_inversion_order(x);
    for (unsigned k = 1; k <= k_max; ++k) {
        const u64 root = floor_root_real(x, k);
        long double pi_half = static_cast<long double>(table.pi(static_cast<double>(root)));
        if (is_exact_power(x, root, k) && table.is_prime(root)) pi_half -= 0.5L;
        sum += pi_half / static_cast<long double>(k);
    }
    return static_cast<double>(sum);
}

std::complex<double> zero_pair_complex(double x, ZetaZero zero, EvalAccuracy acc) {
    if (!(x > 1.0)) throw std::domain_error("zero_pair_term: requires x > 1");
    const double L = std::log(x);
    const cplx rho(0.5, zero.ordinate);
    return ei(rho * L, acc) + ei((1.0 - rho) * L, acc);
}

double zero_pair_term(double x, ZetaZero zero, EvalAccuracy acc) {
    return 2.0 * zero_pair_complex(x, zero, acc).real();
}

double zero_pair_amplitude(double x, ZetaZero zero, EvalAccuracy acc) {
    if (!(x > 1.0)) throw std::domain_error("zero_pair_amplitude: requires x > 1");
    const double L = std::log(x);
    // Ei(rho log x) = i*pi + e^z/z*(1 + ...); the oscillating factor is what
    // bounds 4*Re[Ei], so the constant i*pi is removed before taking |.|
    const cplx osc = ei(cplx(0.5, zero.ordinate) * L, acc) - cplx(0.0, M_PI);
    return 4.0 * std::abs(osc);
}

BiasMagnitudeReport bias_magnitude_comparison(double x, const ZeroTable& zeros,
                                              const PrimeTable& table, EvalAccuracy acc) {
    if (!(x >= 1e4)) throw std::domain_error("bias_magnitude_comparison: requires x >= 1e4");
    BiasMagnitudeReport r;
    r.x = x;
    const double sqrt_x = std::sqrt(x);
    const u64 root = floor_root_real(x, 2);
    r.n2_term = -0.5 * f_weighted_count_floor(root, is_exact_power(x, root, 2), table);
    r.n2_approx = -sqrt_x / std::log(x);
    r.rho1_pair = zero_pair_term(x, zeros.first(), acc);
    r.rho1_bound = 2.0 * sqrt_x / (zeros.first().modulus() * std::log(x));
    r.squares_dominate = std::fabs(r.n2_term) > std::fabs(r.rho1_pair);
    return r;
}

double pi_explicit_approx(double x, std::size_t num_zeros, const ZeroTable& zeros,
                          EvalAccuracy acc) {
    if (!(x >= 2.0)) throw std::domain_error("pi_explicit_approx: requires x >= 2");
    if (num_zeros > zeros.zeros().size())
        throw std::out_of_range("pi_explicit_approx: not enough zeros loaded");

    double sum = 0.0;
    const unsigned n_max = max_inversion_order(x);
    for (unsigned n = 1; n <= n_max; ++n) {
        const int mu = mobius(n);
        if (mu == 0) continue;
        const double y = std::pow(x, 1.0 / static_cast<double>(n));
        const double Ly = std::log(y);
        double f_k = ei_real(Ly, acc);  // Li(y), the main term
        for (std::size_t j = 0; j < num_zeros; ++j) {
            const cplx rho(0.5, zeros.zeros()[j].ordinate);
            f_k -= (ei(rho * Ly, acc) + ei((1.0 - rho) * Ly, acc)).real();
        }
        sum += static_cast<double>(mu) / static_cast<double>(n) * f_k;
    }
    return sum;
}

}  // namespace legendre
