#include "oracles.hpp"

#include <cmath>

namespace oracles {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

std::uint64_t prime_count(std::uint64_t x) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (is_prime(n)) ++c;
    return c;
}

double weighted_prime_power_count(double x) {
    if (x < 2.0) return 0.0;
    const std::uint64_t n_max = static_cast<std::uint64_t>(std::floor(x));
    const bool integral = (x == std::floor(x));
    long double sum = 0.0L;
    for (std::uint64_t p = 2; p <= n_max; ++p) {
        if (!is_prime(p)) continue;
        std::uint64_t pk = p;
        unsigned k = 1;
        while (true) {
            if (integral && pk == n_max)
                sum += 0.5L / k;
            else
                sum += 1.0L / k;
            if (pk > n_max / p) break;
            pk *= p;
            ++k;
        }
    }
    return static_cast<double>(sum);
}

long double ei_series_reference(long double x) {
    const long double euler_gamma = 0.577215664901532860606512090082402431L;
    long double term = 1.0L, sum = 0.0L;
    for (int k = 1; k < 50'000; ++k) {
        term *= x / k;
        const long double add = term / k;
        sum += add;
        if (std::fabs(add) < 1e-25L * (1.0L + std::fabs(sum))) break;
    }
    return euler_gamma + std::log(x) + sum;
}

}  // namespace oracles
