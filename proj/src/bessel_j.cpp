#include "mbessel/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mbessel {
namespace {

constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticLimit = 25.0;
constexpr double kRescale = 1e250;
constexpr double kMillerGrowth = 1e16;

// (x/2)^n / n! * sum_k (-x^2/4)^k / (k! (n+1)_k), used for x <= 2 where the
// alternating terms never exceed the leading one.
double j_series(int n, double x) {
    const double half = x / 2;
    double lead = 1.0;
    for (int k = 1; k <= n; ++k) lead *= half / k;
    if (lead == 0.0) return 0.0;
    const double q = -half * half;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
        term *= q / (static_cast<double>(k) * (n + k));
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return lead * sum;
}

// Hankel expansion for J_0 and J_1, x > 25. The phase shifts are applied through
// sin/cos of x itself so the library's argument reduction sees the exact argument.
void j01_asymptotic(double x, double& j0, double& j1) {
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    for (int nu = 0; nu <= 1; ++nu) {
        const double mu = 4.0 * nu * nu;
        double p = 1.0, q = 0.0;
        double term = 1.0;
        for (int k = 1; k < 100; ++k) {
            const double odd = 2 * k - 1;
            const double next = term * (mu - odd * odd) / (8.0 * k * x);
            if (std::fabs(next) > std::fabs(term)) break;
            term = next;
            // b_1 - b_3 + ... into Q, b_0 - b_2 + ... into P
            switch (k % 4) {
                case 1: q += term; break;
                case 2: p -= term; break;
                case 3: q -= term; break;
                default: p += term; break;
            }
            if (std::fabs(term) < 1e-18) break;
        }
        double cos_chi, sin_chi;
        if (nu == 0) {  // chi = x - pi/4
            cos_chi = (c + s) * std::numbers::sqrt2 / 2;
            sin_chi = (s - c) * std::numbers::sqrt2 / 2;
        } else {  // chi = x - 3pi/4
            cos_chi = (s - c) * std::numbers::sqrt2 / 2;
            sin_chi = -(s + c) * std::numbers::sqrt2 / 2;
        }
        (nu == 0 ? j0 : j1) = amp * (p * cos_chi - q * sin_chi);
    }
}

// Miller's downward recurrence normalized by J_0 + 2 sum J_{2k} = 1. The loop runs two
// orders per pass, so the rescale test and the parity bookkeeping happen once per pair.
double j_miller(int n, double x) {
    const double two_over_x = 2.0 / x;
    // start where the dominant solution, recurred up from top, has grown past
    // kMillerGrowth; the truncation error at order top is below its inverse
    const int top = std::max(n, static_cast<int>(std::ceil(x)));
    int start = top + 1;
    for (double prev = 0.0, cur = 1.0; std::fabs(cur) < kMillerGrowth; ++start) {
        const double next = start * two_over_x * cur - prev;
        prev = cur;
        cur = next;
    }
    start += 4;
    start += start % 2;
    // j holds J_k, jp1 holds J_{k+1}; k is even at the top of each pass
    double jp1 = 0.0, j = 1e-30, sum = 0.0, result = 0.0;
    int k = start;
    auto rescale = [&] {
        if (std::fabs(j) > kRescale) {
            j /= kRescale;
            jp1 /= kRescale;
            sum /= kRescale;
            result /= kRescale;
        }
    };
    // above the target order
    for (; k - 2 > n; k -= 2) {
        const double odd = k * two_over_x * j - jp1;
        const double even = (k - 1) * two_over_x * odd - j;
        jp1 = odd;
        j = even;
        sum += even;
        rescale();
    }
    for (; k > 0; --k) {
        const double next = k * two_over_x * j - jp1;
        jp1 = j;
        j = next;
        if (k - 1 == n) result = j;
        if ((k - 1) % 2 == 0 && k > 1) sum += j;
        rescale();
    }
    return result / (2.0 * sum + j);
}

}  // namespace

double bessel_j(int n, double x) {
    if (n < 0 || !(x >= 0)) throw std::domain_error("bessel_j: requires n >= 0 and x >= 0");
    if (x == 0) return n == 0 ? 1.0 : 0.0;
    if (x <= kSeriesLimit) return j_series(n, x);
    if (x > kAsymptoticLimit && n < x) {
        double j0 = 0.0, j1 = 0.0;
        j01_asymptotic(x, j0, j1);
        if (n == 0) return j0;
        // upward recurrence is stable while the order stays below the argument
        double prev = j0, cur = j1;
        const double two_over_x = 2.0 / x;
        for (int k = 1; k < n; ++k) {
            const double next = k * two_over_x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    return j_miller(n, x);
}

}  // namespace mbessel
