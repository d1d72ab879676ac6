#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "legendre/logint.hpp"
#include "legendre/primes.hpp"

namespace legendre {

/// A nontrivial zeta zero rho = 1/2 + i*ordinate on the critical line.
struct ZetaZero {
    double ordinate;
    double modulus() const { return std::hypot(0.5, ordinate); }  // |rho|
};

/// Ordered positive ordinates of nontrivial zeros, loaded from a data
/// file (zeros are ingested, never computed). File format: '#' comment
/// lines first (the first records provenance), then one positive decimal
/// ordinate per line, strictly ascending.
class ZeroTable {
public:
    static ZeroTable load(std::istream& in, std::string source_hint = "");
    static ZeroTable load(const std::filesystem::path& path);

    const std::vector<ZetaZero>& zeros() const { return zeros_; }
    const std::string& source() const { return source_; }
    const ZetaZero& first() const { return zeros_.front(); }

private:
    std::vector<ZetaZero> zeros_;
    std::string source_;
};

/// Mobius inversion of the weighted count:
///
///   pi(x) ~= sum_{n=1}^{floor(log2 x)} mu(n)/n * f(x^(1/n)),
///
/// the sum truncating where x^(1/n) < 2. Exact rational accumulation;
/// equals pi(x) exactly at non-prime-power x, and pi(x) - 1/2 when x is
/// exactly prime (the half-count convention). Requires 2 <= x <= limit.
double pi_from_f_inversion(double x, const PrimeTable& table);

/// The dual route to f: sum_k pi_half(x^(1/k))/k with half-counting when
/// x^(1/k) lands exactly on a prime. Must equal f_weighted_count(x).
double f_from_pi(double x, const PrimeTable& table);

/// The conjugate-collapsed zero contribution
///   2 * Re[ Li(x^rho) + Li(x^(1-rho)) ],
/// computed through the complex exponential integral. Requires x > 1.
double zero_pair_term(double x, ZetaZero zero, EvalAccuracy acc = {});

/// Li(x^rho) + Li(x^(1-rho)) before taking the real part, for symmetry
/// checks (the imaginary part should vanish to rounding).
std::complex<double> zero_pair_complex(double x, ZetaZero zero, EvalAccuracy acc = {});

/// Envelope of the oscillation: the largest value |zero_pair_term| can
/// attain at this x (about 4*sqrt(x)/(|rho| log x)). Decreases with the
/// ordinate, which the instantaneous (phase-dependent) term values do not.
double zero_pair_amplitude(double x, ZetaZero zero, EvalAccuracy acc = {});

/// Why the bias points the way it does: the n=2 inversion term (squares
/// of primes) against the largest zero contribution.
struct BiasMagnitudeReport {
    double x = 0.0;
    double n2_term = 0.0;     // -(1/2) f(sqrt(x)), the squares-of-primes term
    double n2_approx = 0.0;   // its approximation -sqrt(x)/log x
    double rho1_pair = 0.0;   // zero_pair_term(x, rho_1), n=1 coefficient mu(1)/1
    double rho1_bound = 0.0;  // the size bound 2*sqrt(x)/(|rho_1| log x)
    bool squares_dominate = false;  // |n2_term| > |rho1_pair|
};

/// Requires x >= 1e4 and sqrt(x) within the prime table.
BiasMagnitudeReport bias_magnitude_comparison(double x, const ZeroTable& zeros,
                                              const PrimeTable& table, EvalAccuracy acc = {});

/// Truncated explicit-formula approximation of pi(x):
///
///   A_K(x) = sum_n mu(n)/n [ Li(x^(1/n))
///                            - sum_{j<=K} (Li(x^(1/n))^rho_j-pair) ],
///
/// with per-zero pairs Li(y^rho) + Li(y^(1-rho)). The remaining small
/// terms of the exact formula are omitted; partial sums are directional
/// only. K = 0 gives the zero-free leading approximation.
double pi_explicit_approx(double x, std::size_t num_zeros, const ZeroTable& zeros,
                          EvalAccuracy acc = {});

}  // namespace legendre
