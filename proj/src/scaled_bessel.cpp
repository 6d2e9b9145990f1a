#include "mbessel/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

// Scaled modified Bessel kernels of order 0 and 1. Intermediate sums run in long
// double; the ascending series are all-positive (I) or only mildly cancelling (K on
// x <= 2), so the extra bits carry straight through to the double result.

namespace mbessel {
namespace {

using real = long double;

constexpr double kSeriesLimitI = 25.0;  // asymptotic remainder ~ e^{-2x} beyond this
constexpr double kSeriesLimitK = 2.0;
constexpr real kEps = std::numeric_limits<real>::epsilon();
constexpr real kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr real kPi = 3.141592653589793238462643383279502884L;

// sum_k (x^2/4)^k / (k! (k+nu)!) for nu = 0, 1
real i_series(int nu, real x) {
    const real q = x * x / 4;
    real term = 1;
    real sum = 1;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<real>(k) * static_cast<real>(k + nu));
        sum += term;
        if (term < kEps * sum) break;
    }
    return sum;
}

// I_nu(x) e^{-x} ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
real i_asymptotic(int nu, real x) {
    const real mu = 4.0L * nu * nu;
    real term = 1;
    real sum = 1;
    for (int k = 1; k < 200; ++k) {
        const real odd = 2 * k - 1;
        const real next = -term * (mu - odd * odd) / (8.0L * k * x);
        if (std::fabs(next) > std::fabs(term)) break;
        term = next;
        sum += term;
        if (std::fabs(term) < kEps * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2 * kPi * x);
}

real i_scaled(int nu, double xd) {
    const real x = xd;
    if (xd <= kSeriesLimitI) {
        const real lead = nu == 0 ? 1.0L : x / 2;
        return lead * i_series(nu, x) * std::exp(-x);
    }
    return i_asymptotic(nu, x);
}

// Ascending series for K_0 and K_1 on 0 < x <= 2, multiplied by e^x.
void k_series(real x, real& k0, real& k1) {
    const real q = x * x / 4;
    const real log_half = std::log(x / 2);

    real i0 = 1, i1 = 1;
    real s0 = -kEulerGamma;                      // psi(1)
    real s1 = -kEulerGamma + (1 - kEulerGamma);  // psi(1) + psi(2)
    real psi = -kEulerGamma;                     // psi(k+1)
    real t0 = 1, t1 = 1;
    for (int k = 1; k < 200; ++k) {
        const real kk = k;
        t0 *= q / (kk * kk);
        t1 *= q / (kk * (kk + 1));
        psi += 1 / kk;
        i0 += t0;
        i1 += t1;
        const real d0 = psi * t0;
        const real d1 = (2 * psi + 1 / (kk + 1)) * t1;
        s0 += d0;
        s1 += d1;
        if (t0 < kEps * std::fabs(s0) && t1 < kEps * std::fabs(s1) && t0 < kEps * i0) break;
    }
    i1 *= x / 2;
    const real ex = std::exp(x);
    k0 = (-log_half * i0 + s0) * ex;
    k1 = (1 / x + log_half * i1 - x / 4 * s1) * ex;
}

// Steed's continued fraction for K_0 e^x and K_1 e^x (Thompson-Barnett CF2), x > 2.
void k_continued_fraction(real x, real& k0, real& k1) {
    const real a1 = 0.25L;  // 1/4 - nu^2 with nu = 0
    real b = 2 * (1 + x);
    real d = 1 / b;
    real h = d;
    real delh = d;
    real q1 = 0, q2 = 1;
    real q = a1, c = a1;
    real a = -a1;
    real s = 1 + q * delh;
    int i = 2;
    for (; i < 10000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const real qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2;
        d = 1 / (b + a * d);
        delh = (b * d - 1) * delh;
        h += delh;
        const real dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    if (i == 10000) throw ConvergenceError("k_scaled: continued fraction did not converge");
    h *= a1;
    k0 = std::sqrt(kPi / (2 * x)) / s;
    k1 = k0 * (x + 0.5L - h) / x;
}

void k_scaled(double xd, real& k0, real& k1) {
    if (!(xd > 0)) throw std::domain_error("modified Bessel K: argument must be positive");
    if (std::isinf(xd)) {
        k0 = k1 = 0;
        return;
    }
    if (xd <= kSeriesLimitK)
        k_series(xd, k0, k1);
    else
        k_continued_fraction(xd, k0, k1);
}

void require_nonnegative(double x) {
    if (!(x >= 0)) throw std::domain_error("modified Bessel I: argument must be non-negative");
}

}  // namespace

double i0_scaled(double x) {
    require_nonnegative(x);
    if (x == 0) return 1.0;
    return static_cast<double>(i_scaled(0, x));
}

double i1_scaled(double x) {
    require_nonnegative(x);
    if (x == 0) return 0.0;
    return static_cast<double>(i_scaled(1, x));
}

double k0_scaled(double x) {
    real k0, k1;
    k_scaled(x, k0, k1);
    return static_cast<double>(k0);
}

double k1_scaled(double x) {
    real k0, k1;
    k_scaled(x, k0, k1);
    return static_cast<double>(k1);
}

}  // namespace mbessel
