#pragma once

// Independent reference implementations used only by tests. Nothing here
// may call into the library paths it checks.

#include <cstdint>
#include <vector>

namespace oracles {

/// Primality by pure trial division.
bool is_prime(std::uint64_t n);

/// All primes <= limit, by trial division (no sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// #{p prime : p <= x} by trial division.
std::uint64_t prime_count(std::uint64_t x);

/// Direct prime-power enumeration of f(x) = sum 1/k over p^k <= x,
/// half weight when p^k == x exactly (x integral).
double weighted_prime_power_count(double x);

/// Ei(x) for real x > 0 by the raw power series in long double.
long double ei_series_reference(long double x);

}  // namespace oracles
