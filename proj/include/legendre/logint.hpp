#pragma once

#include <complex>

namespace legendre {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Convergence request for the Ei/li evaluators. `abs_tol` is enforced
/// as absolute-or-relative: a result y is accepted when the error
/// estimate is below abs_tol * max(1, |y|) (a pure absolute 1e-9 is not
/// representable in double once Ei exceeds ~1e7).
struct EvalAccuracy {
    double abs_tol = 1e-9;
    int max_terms = 10'000;
};

/// Exponential integral Ei(z), principal branch of log, for complex z != 0.
///
/// |z| <= 24:  power series  Ei(z) = gamma + log z + sum_k z^k/(k*k!),
///             accumulated in long double with compensated summation.
/// |z| >  24:  continued fraction (modified Lentz) away from the positive
///             real axis; asymptotic series e^z/z * sum_k k!/z^k within
///             |Im z| <= 1 of it, where the continued fraction is invalid.
///
/// For real z > 0 the result is exactly real. On the negative real axis the
/// branch is taken from above (imaginary part +i*pi).
/// Throws std::domain_error at z = 0 and accuracy_error (carrying the
/// partial value) if max_terms is exhausted.
std::complex<double> ei(std::complex<double> z, EvalAccuracy acc = {});

/// Real branch of Ei at real x != 0.
double ei_real(double x, EvalAccuracy acc = {});

/// li(x) = integral from 2 to x of dt/log t, evaluated as
/// Ei(log x) - Ei(log 2). Requires x > 1 (1 < x < 2 is allowed and gives a
/// negative value, but note the integral's natural domain starts at 2).
double li(double x, EvalAccuracy acc = {});

/// Li(x) = Ei(log x): the 0-based principal-value integral,
/// li(x) + Li(2) with Li(2) = 1.04516...  Requires x > 1.
double Li(double x, EvalAccuracy acc = {});

/// Independent evaluation of li(x) by adaptive Simpson quadrature of
/// 1/log t over [2, x]; the cross-check path. Requires x > 1.
double li_quadrature(double x, double abs_tol = 1e-9);

/// Truncated asymptotic expansion
///   sum_{l=0}^{terms-1} l! * x / (log x)^(l+1).
/// Requires x > 1 and 1 <= terms <= 20.
double li_asymptotic(double x, int terms);

/// Worst disagreement between the methods that hand off at |z| = 24,
/// sampled over the annulus 20 <= |z| <= 28 (relative to max(1, |Ei|)).
/// Exercised as a build-time self-test; expected below 1e-8.
double ei_method_agreement_on_annulus();

}  // namespace legendre
