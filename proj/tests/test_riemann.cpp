#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "legendre/primes.hpp"
#include "legendre/riemann.hpp"

using namespace legendre;

namespace {

const PrimeTable& table_1e6() {
    static const PrimeTable t = PrimeTable::build(1'000'000);
    return t;
}

const ZeroTable& zeros100() {
    static const ZeroTable z = ZeroTable::load(std::filesystem::path(LEGENDRE_DATA_DIR) /
                                               "zeta_zeros_100.txt");
    return z;
}

bool is_prime_power(std::uint64_t n, const PrimeTable& t) {
    for (unsigned k = 1; (1ull << k) <= n || k == 1; ++k) {
        const std::uint64_t r = floor_kth_root(n, k);
        std::uint64_t pk = 1;
        bool overflow = false;
        for (unsigned i = 0; i < k; ++i) {
            if (pk > n / r) { overflow = true; break; }
            pk *= r;
        }
        if (!overflow && pk == n && r <= t.limit() && t.is_prime(r)) return true;
        if ((1ull << (k + 1)) > n) break;
    }
    return false;
}

}  // namespace

TEST_CASE("zero table loads with provenance and sane ordinates") {
    const ZeroTable& z = zeros100();
    REQUIRE(z.zeros().size() == 100);
    CHECK(std::fabs(z.first().ordinate - 14.134725) < 1e-4);
    CHECK(!z.source().empty());
    for (std::size_t i = 1; i < z.zeros().size(); ++i)
        CHECK(z.zeros()[i].ordinate > z.zeros()[i - 1].ordinate);
}

TEST_CASE("zero table loader rejects malformed input") {
    std::istringstream good("# test zeros\n14.134725\n21.022040\n");
    CHECK(ZeroTable::load(good).zeros().size() == 2);

    std::istringstream unordered("14.134725\n14.0\n");
    CHECK_THROWS_AS(ZeroTable::load(unordered), std::runtime_error);

    std::istringstream negative("-14.134725\n");
    CHECK_THROWS_AS(ZeroTable::load(negative), std::runtime_error);

    std::istringstream wrong_first("13.0\n14.134725\n");
    CHECK_THROWS_AS(ZeroTable::load(wrong_first), std::runtime_error);

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(ZeroTable::load(empty), std::runtime_error);

    std::istringstream bare_hash("#\n14.134725\n");
    CHECK(ZeroTable::load(bare_hash).zeros().size() == 1);
}

TEST_CASE("pi_from_f_inversion examples") {
    const auto& t = table_1e6();
    CHECK(pi_from_f_inversion(100.0, t) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(pi_from_f_inversion(10.0, t) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(pi_from_f_inversion(1.99, t) == 0.0);
    CHECK(pi_from_f_inversion(2.0, t) == doctest::Approx(0.5).epsilon(1e-14));  // pi(2) - 1/2
    // composite prime powers: the half-weight corrections at the exact
    // roots 1024^(1/n) telescope away and the identity stays exact
    CHECK(pi_from_f_inversion(1024.0, t) ==
          doctest::Approx(static_cast<double>(t.pi(1024.0))).epsilon(1e-12));
    CHECK(pi_from_f_inversion(8.0, t) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(pi_from_f_inversion(-1.0, t), std::domain_error);
    CHECK_THROWS_AS(pi_from_f_inversion(2e6, t), std::out_of_range);
}

TEST_CASE("inversion is exact off prime powers, half-adjusted at primes") {
    const auto& t = table_1e6();
    std::mt19937_64 rng(424'242);
    std::uniform_int_distribution<std::uint64_t> dist(10, 10'000);

    int checked = 0;
    while (checked < 200) {
        const std::uint64_t x = dist(rng);
        if (is_prime_power(x, t)) continue;
        ++checked;
        const double expect = static_cast<double>(t.pi(static_cast<double>(x)));
        CHECK(std::fabs(pi_from_f_inversion(static_cast<double>(x), t) - expect) < 1e-9);
    }

    const auto primes = t.primes_between(2, 10'000);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t p = primes[pick(rng)];
        const double expect = static_cast<double>(t.pi(static_cast<double>(p))) - 0.5;
        CHECK(std::fabs(pi_from_f_inversion(static_cast<double>(p), t) - expect) < 1e-9);
    }
}

TEST_CASE("f_from_pi equals the enumeration route") {
    const auto& t = table_1e6();
    CHECK(f_from_pi(10.0, t) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
    CHECK(f_from_pi(3.0, t) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(f_from_pi(1.5, t) == 0.0);
    for (std::uint64_t x = 0; x <= 10'000; ++x) {
        const double xd = static_cast<double>(x);
        CHECK(std::fabs(f_from_pi(xd, t) - f_weighted_count(xd, t)) < 1e-12);
    }
}

TEST_CASE("zero pair terms: symmetry, frozen value, size bound") {
    const ZetaZero rho1 = zeros100().first();
    CHECK(std::fabs(zero_pair_complex(1e6, rho1).imag()) < 1e-9);

    // frozen from 25-digit complex Ei evaluation
    CHECK(zero_pair_term(1e6, rho1) == doctest::Approx(10.349103690434).epsilon(1e-9));

    const double bound = 4.0 * std::sqrt(1e6) / (rho1.modulus() * std::log(1e6));
    CHECK(std::fabs(zero_pair_term(1e6, rho1)) <= 1.25 * bound);
    CHECK(rho1.ordinate == doctest::Approx(14.134725).epsilon(1e-7));
}

TEST_CASE("pair amplitudes decrease across the first ten zeros at 1e6") {
    double prev = 1e300;
    for (std::size_t j = 0; j < 10; ++j) {
        const ZetaZero z = zeros100().zeros()[j];
        const double amp = zero_pair_amplitude(1e6, z);
        CHECK(amp < prev);
        CHECK(std::fabs(zero_pair_term(1e6, z)) <= amp * (1.0 + 1e-12));
        prev = amp;
    }
}

TEST_CASE("squares of primes dominate the first zero's contribution") {
    const auto& t = table_1e6();
    for (double x : {1e4, 1e5, 1e6}) {
        const BiasMagnitudeReport r = bias_magnitude_comparison(x, zeros100(), t);
        CHECK(r.squares_dominate);
        CHECK(r.n2_term < 0.0);
        CHECK(std::fabs(r.n2_term) > std::fabs(r.rho1_pair));
    }
    const BiasMagnitudeReport r6 = bias_magnitude_comparison(1e6, zeros100(), t);
    // n2 = -(1/2) f(1000); approximation -sqrt(x)/log(x) = -72.38...
    CHECK(r6.n2_approx == doctest::Approx(-72.382414).epsilon(1e-6));
    CHECK(r6.rho1_bound == doctest::Approx(10.235384).epsilon(1e-4));

    const BiasMagnitudeReport r4 = bias_magnitude_comparison(1e4, zeros100(), t);
    // -(1/2) f(100) = -(1/2)(25 + 4/2 + 2/3 + 2/4 + 1/5 + 1/6) = -214/15
    CHECK(r4.n2_term == doctest::Approx(-214.0 / 15.0).epsilon(1e-13));

    CHECK_THROWS_AS(bias_magnitude_comparison(100.0, zeros100(), t), std::domain_error);
}

TEST_CASE("partial zero sums tighten the explicit-formula residual at 1e6") {
    const auto& t = table_1e6();
    const double pi_x = static_cast<double>(t.pi(1e6));
    const double base = std::fabs(pi_explicit_approx(1e6, 0, zeros100()) - pi_x);
    for (std::size_t k : {10u, 50u, 100u}) {
        const double with_zeros = std::fabs(pi_explicit_approx(1e6, k, zeros100()) - pi_x);
        CHECK(with_zeros < base);
    }
    CHECK_THROWS_AS(pi_explicit_approx(1e6, 101, zeros100()), std::out_of_range);
}
