#include "legendre/logint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "legendre/errors.hpp"

namespace legendre {

namespace {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

constexpr double kSwitchRadius = 24.0;
constexpr long double kEulerGammaL = 0.577215664901532860606512090082402431L;

void check_acc(const EvalAccuracy& acc) {
    if (!(acc.abs_tol > 0.0)) throw std::domain_error("EvalAccuracy: abs_tol must be > 0");
    if (acc.max_terms < 1) throw std::domain_error("EvalAccuracy: max_terms must be >= 1");
}

// sign of the i*pi term accompanying the e^z/z expansions; the negative
// real axis is approached from above (principal branch)
double branch_sign(cplx z) {
    if (z.imag() > 0.0) return 1.0;
    if (z.imag() < 0.0) return -1.0;
    return z.real() < 0.0 ? 1.0 : 0.0;
}

//                                  inf    z^k
//   Ei(z) = gamma + log z  +  sum      -------
//                                 k=1   k * k!
//
// Long double Kahan accumulation: for |z| near the switch radius with
// Re z < 0 the sum cancels down from terms of size ~e^|z|, and plain
// double cannot hold the 1e-8 handoff agreement.
cplx ei_power_series(cplx z, const EvalAccuracy& acc) {
    const cplxl zl(z.real(), z.imag());
    cplxl term = 1.0L, sum = 0.0L, comp = 0.0L;
    for (int k = 1; k <= acc.max_terms; ++k) {
        term *= zl / static_cast<long double>(k);
        const cplxl add = term / static_cast<long double>(k);
        const cplxl y = add - comp;
        const cplxl t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(add) < 1e-20L * (1.0L + std::abs(sum))) {
            const cplxl r = kEulerGammaL + std::log(zl) + sum;
            return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
        }
    }
    const cplxl r = kEulerGammaL + std::log(zl) + sum;
    throw accuracy_error("ei: power series did not converge in " +
                             std::to_string(acc.max_terms) + " terms",
                         {static_cast<double>(r.real()), static_cast<double>(r.imag())});
}

// Modified Lentz evaluation of the continued fraction
//
//   Ei(z) = s*i*pi - e^z / (1 - z - 1^2/(3 - z - 2^2/(5 - z - ...)))
//
// valid for z off the positive real axis; convergence degrades as z
// approaches it, which the dispatcher avoids.
cplx ei_continued_fraction(cplx z, const EvalAccuracy& acc) {
    cplx ei = cplx(0.0, branch_sign(z) * M_PI);
    cplx c, d;
    if (std::abs(ei) > 1e-300) {
        c = 1.0 / ei;
        d = 0.0;
        c = 1.0 / (1.0 - z - std::exp(z) * c);
        d = 1.0 / (1.0 - z - std::exp(z) * d);
        ei *= d / c;
    } else {
        d = 1.0 / (1.0 - z);
        ei = d * (-std::exp(z));
    }
    for (int k = 1; k <= acc.max_terms; ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        c = 1.0 / (2.0 * k + 1.0 - z - kk * c);
        d = 1.0 / (2.0 * k + 1.0 - z - kk * d);
        const cplx ratio = d / c;
        ei *= ratio;
        if (std::abs(ratio - 1.0) < 1e-16) return ei;
    }
    throw accuracy_error("ei: continued fraction did not converge in " +
                             std::to_string(acc.max_terms) + " terms",
                         ei);
}

//   Ei(z) ~ s*i*pi + e^z/z * (1 + 1!/z + 2!/z^2 + ...),  truncated at the
//   smallest term; only used for large |z| near the positive real axis.
cplx ei_asymptotic(cplx z, const EvalAccuracy& acc) {
    cplx sum = cplx(0.0, branch_sign(z) * M_PI);
    cplx term = std::exp(z) / z;
    double err = std::abs(term);  // first omitted term once we stop
    for (int k = 0; k <= acc.max_terms; ++k) {
        sum += term;
        const cplx next = term * static_cast<double>(k + 1) / z;
        err = std::abs(next);
        if (err >= std::abs(term)) break;  // past the optimal truncation
        if (err < 1e-18 * std::abs(sum)) break;
        term = next;
    }
    if (err > acc.abs_tol * std::max(1.0, std::abs(sum)))
        throw accuracy_error("ei: asymptotic series cannot reach requested accuracy at |z|=" +
                                 std::to_string(std::abs(z)),
                             sum);
    return sum;
}

}  // namespace

std::complex<double> ei(std::complex<double> z, EvalAccuracy acc) {
    check_acc(acc);
    if (z == cplx(0.0, 0.0)) throw std::domain_error("ei: z = 0 is a logarithmic singularity");
    if (z.imag() == 0.0) z = cplx(z.real(), +0.0);  // pin the branch on the cut
    const double r = std::abs(z);
    if (r <= kSwitchRadius) return ei_power_series(z, acc);
    if (z.real() > 0.0 && std::fabs(z.imag()) <= 1.0) return ei_asymptotic(z, acc);
    return ei_continued_fraction(z, acc);
}

double ei_real(double x, EvalAccuracy acc) {
    if (x == 0.0) throw std::domain_error("ei: z = 0 is a logarithmic singularity");
    return ei(cplx(x, 0.0), acc).real();
}

namespace {

// Li(2) = Ei(log 2) = 1.04516..., the constant offset between Li and li
double li2_constant() {
    static const double value = ei_real(std::log(2.0), EvalAccuracy{1e-12, 10'000});
    return value;
}

}  // namespace

double Li(double x, EvalAccuracy acc) {
    if (!(x > 1.0)) throw std::domain_error("Li: requires x > 1");
    return ei_real(std::log(x), acc);
}

double li(double x, EvalAccuracy acc) {
    if (!(x > 1.0)) throw std::domain_error("li: requires x > 1");
    return ei_real(std::log(x), acc) - li2_constant();
}

namespace {

double inv_log(double t) { return 1.0 / std::log(t); }

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(double a, double b, double fa, double fm, double fb, double whole, double tol,
             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = inv_log(lm), frm = inv_log(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth > 60 || std::fabs(delta) < 15.0 * tol) return left + right + delta / 15.0;
    return adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double li_quadrature(double x, double abs_tol) {
    if (!(x > 1.0)) throw std::domain_error("li_quadrature: requires x > 1");
    if (!(abs_tol > 0.0)) throw std::domain_error("li_quadrature: abs_tol must be > 0");
    if (x == 2.0) return 0.0;
    const double a = 2.0, b = x;
    const double fa = inv_log(a), fb = inv_log(b), fm = inv_log(0.5 * (a + b));
    return adapt(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), abs_tol, 0);
}

double li_asymptotic(double x, int terms) {
    if (!(x > 1.0)) throw std::domain_error("li_asymptotic: requires x > 1");
    if (terms < 1 || terms > 20) throw std::domain_error("li_asymptotic: need 1 <= terms <= 20");
    const double L = std::log(x);
    double sum = 0.0, factorial = 1.0, power = L;
    for (int l = 0; l < terms; ++l) {
        if (l > 0) {
            factorial *= static_cast<double>(l);
            power *= L;
        }
        sum += factorial * x / power;
    }
    return sum;
}

double ei_method_agreement_on_annulus() {
    const EvalAccuracy acc{1e-9, 10'000};
    double worst = 0.0;
    for (double r = 20.0; r <= 28.0001; r += 1.0) {
        for (int a = 0; a < 96; ++a) {
            const double th = 2.0 * M_PI * a / 96.0;
            const cplx z = std::polar(r, th);
            const cplx series = ei_power_series(z, acc);
            cplx other;
            if (z.real() > 0.0 && std::fabs(z.imag()) <= 1.0) {
                // the asymptotic side of the handoff only ever serves |z| >= 24
                if (r < kSwitchRadius) continue;
                other = ei_asymptotic(z, acc);
            } else {
                other = ei_continued_fraction(z, acc);
            }
            const double diff = std::abs(series - other) / std::max(1.0, std::abs(series));
            worst = std::max(worst, diff);
        }
    }
    return worst;
}

}  // namespace legendre
