#include "mbessel/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mbessel {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxNewton = 50;

// McMahon's large-zero expansion.
double mcmahon(int n, int s) {
    const double beta = (s + 0.5 * n - 0.25) * kPi;
    const double mu = 4.0 * n * n;
    const double mu1 = mu - 1.0;
    const double e = 1.0 / (8.0 * beta);
    const double e2 = e * e;
    const double t3 = 4.0 * mu1 * (7.0 * mu - 31.0) / 3.0;
    const double t5 = 32.0 * mu1 * ((83.0 * mu - 982.0) * mu + 3779.0) / 15.0;
    return beta - e * (mu1 + e2 * (t3 + e2 * t5));
}

// s-th zero of Ai, from its large-s expansion (good to ~1e-3 already at s = 1).
double airy_zero(int s) {
    const double t = 3.0 * kPi / 8.0 * (4.0 * s - 1.0);
    const double t2 = 1.0 / (t * t);
    return -std::pow(t, 2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 - t2 * 5.0 / 36.0));
}

// Transition-region estimate for the leading zeros of large order.
double airy_estimate(int n, int s) {
    const double a = airy_zero(s);
    const double c = std::cbrt(0.5 * n);
    return n - a * c + 0.15 * a * a / c;
}

double initial_guess(int n, int s) {
    if (n == 0 || s > n) return mcmahon(n, s);
    return airy_estimate(n, s);
}

int expected_sign(int s) { return s % 2 == 1 ? 1 : -1; }  // sign of J_n just left of zero s

bool has_sign(double value, int sign) { return sign > 0 ? value > 0 : value < 0; }

// Smallest x > lo with a sign change, stepping by less than the minimum zero gap.
void scan_bracket(int n, int sign, double& lo, double& hi) {
    constexpr double step = 1.0;
    hi = lo + step;
    for (int guard = 0; guard < 100000; ++guard) {
        if (!has_sign(bessel_j(n, hi), sign)) return;
        lo = hi;
        hi += step;
    }
    throw ConvergenceError("bessel_j_zeros: no sign change found for order " + std::to_string(n));
}

// Newton iteration inside [lo, hi], falling back to bisection when a step leaves
// the bracket. J_n has sign `sign` at lo and the opposite sign at hi.
double refine(int n, int sign, double lo, double hi, double guess) {
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int it = 0; it < kMaxNewton; ++it) {
        const double j = bessel_j(n, x);
        if (j == 0.0) return x;
        if (has_sign(j, sign))
            lo = x;
        else
            hi = x;
        const double dj = n / x * j - bessel_j(n + 1, x);
        double next = x - j / dj;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double dx = next - x;
        x = next;
        if (std::fabs(dx) <= 2.0 * std::numeric_limits<double>::epsilon() * x) return x;
    }
    throw ConvergenceError("bessel_j_zeros: Newton iteration failed for order " + std::to_string(n));
}

}  // namespace

BesselZeros bessel_j_zeros(int n, int count) {
    if (n < 0 || count < 1) throw std::domain_error("bessel_j_zeros: requires n >= 0 and count >= 1");
    BesselZeros out;
    out.order = n;
    out.zeros.reserve(count);

    // Zero gaps of J_0 lie in (3.11, pi) and increase; for n >= 1 they exceed pi and decrease.
    const double min_gap = n == 0 ? 3.0 : kPi;
    double prev = 0.0;
    double prev_gap = 0.0;
    for (int s = 1; s <= count; ++s) {
        const int sign = expected_sign(s);
        double lo, hi;
        if (s == 1) {
            lo = n == 0 ? 1.0 : static_cast<double>(n);  // j_{n,1} > n
            scan_bracket(n, sign, lo, hi);
        } else {
            lo = prev + min_gap;
            hi = prev + (n == 0 ? kPi : prev_gap);
            if (s == 2 || !has_sign(bessel_j(n, lo), sign) || has_sign(bessel_j(n, hi), sign))
                scan_bracket(n, sign, lo, hi);
        }
        const double z = refine(n, sign, lo, hi, initial_guess(n, s));
        if (s > 1) prev_gap = z - prev;
        prev = z;
        out.zeros.push_back(z);
    }
    return out;
}

}  // namespace mbessel
