#include "mbessel/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mbessel {
namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0)) throw std::domain_error(std::string(what) + ": argument must be positive");
}

// Normalized ascending series sum_k (x^2/4)^k / (k! (nu+1)_k) = I_nu(x) nu! / (x/2)^nu.
long double normalized_i_series(int nu, long double x) {
    const long double q = x * x / 4;
    long double term = 1, sum = 1;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<long double>(k) * (nu + k));
        sum += term;
        if (term < std::numeric_limits<long double>::epsilon() * sum) break;
    }
    return sum;
}

// Olver series 1 + u_1(t)/n + u_2(t)/n^2 + u_3(t)/n^3.
double olver_series(double n, double t) {
    const double t2 = t * t;
    const double u1 = t * (3.0 - 5.0 * t2) / 24.0;
    const double u2 = t2 * (81.0 + t2 * (-462.0 + t2 * 385.0)) / 1152.0;
    const double u3 = t * t2 * (30375.0 + t2 * (-369603.0 + t2 * (765765.0 - t2 * 425425.0))) / 414720.0;
    return 1.0 + (u1 + (u2 + u3 / n) / n) / n;
}

void require_olver_order(int n, double x) {
    if (n < 1) throw std::domain_error("olver_i: order must be positive");
    require_positive(x, "olver_i");
}

}  // namespace

double olver_eta(double z) {
    const double s = std::sqrt(1.0 + z * z);
    return s + std::log(z / (1.0 + s));
}

double olver_i_log(int n, double x) {
    require_olver_order(n, x);
    const double nu = n;
    const double s = std::hypot(nu, x);  // n sqrt(1+z^2)
    const double exponent = s + nu * std::log(x / (nu + s));
    return exponent - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(s) +
           std::log(olver_series(nu, nu / s));
}

double olver_i(int n, double x) {
    require_olver_order(n, x);
    const double nu = n;
    const double s = std::hypot(nu, x);
    // s - x = n^2 / (s + x) avoids cancelling the e^{x} growth against the scaling
    const double exponent = nu * nu / (s + x) + nu * std::log(x / (nu + s));
    return std::exp(exponent) / std::sqrt(2.0 * std::numbers::pi * s) * olver_series(nu, nu / s);
}

double olver_i_ratio(int n, double x) {
    if (n < 2) throw std::domain_error("olver_i_ratio: order must be at least 2");
    require_positive(x, "olver_i_ratio");
    const double nu = n;
    const double s_hi = std::hypot(nu, x);
    const double s_lo = std::hypot(nu - 1.0, x);
    const double ds = (2.0 * nu - 1.0) / (s_hi + s_lo);
    // difference of n*eta(x/n) between orders n and n-1, without forming either
    const double d_exponent =
        ds + std::log(x / (nu + s_hi)) - (nu - 1.0) * std::log1p((1.0 + ds) / (nu - 1.0 + s_lo));
    const double prefactor = std::exp(0.25 * std::log1p(-(2.0 * nu - 1.0) / (s_hi * s_hi)));
    return std::exp(d_exponent) * prefactor * olver_series(nu, nu / s_hi) /
           olver_series(nu - 1.0, (nu - 1.0) / s_lo);
}

std::vector<double> k_ratio_sequence(int n, double x) {
    require_positive(x, "k_ratio_sequence");
    if (n < 0) throw std::domain_error("k_ratio_sequence: negative order");
    std::vector<double> ratio(n);
    if (n == 0) return ratio;
    ratio[0] = k1_scaled(x) / k0_scaled(x);
    const double two_over_x = 2.0 / x;
    for (int i = 1; i < n; ++i) ratio[i] = i * two_over_x + 1.0 / ratio[i - 1];
    return ratio;
}

std::vector<double> i_ratio_sequence(int n, double x) {
    require_positive(x, "i_ratio_sequence");
    if (n < 0) throw std::domain_error("i_ratio_sequence: negative order");
    std::vector<double> ratio(n);
    if (n == 0) return ratio;

    // rho holds I_nu / I_{nu-1}; the recurrence rho_nu = x / (2 nu + x rho_{nu+1}) runs downward
    double rho;
    int nu;
    if ((x / 2) * (x / 2) < n + 1) {
        const long double xl = x;
        rho = static_cast<double>(xl / (2.0L * n) * normalized_i_series(n, xl) /
                                  normalized_i_series(n - 1, xl));
        nu = n;
    } else {
        nu = std::max(n + 8, 32);
        rho = olver_i_ratio(nu, x);
    }
    for (;;) {
        if (nu <= n) ratio[nu - 1] = rho;
        if (nu == 1) break;
        --nu;
        rho = x / (2.0 * nu + x * rho);
    }
    return ratio;
}

RatioTable::RatioTable(int order_max, double x)
    : order_max_(order_max),
      x_(x),
      i_ratio_(i_ratio_sequence(order_max, x)),
      k_ratio_(k_ratio_sequence(order_max, x)) {}

double ik_product(const RatioTable& table, int n) {
    if (n < 0 || n > table.order_max()) throw std::domain_error("ik_product: order outside ratio table");
    const double x = table.argument();
    double p = i0_scaled(x) * k0_scaled(x);
    const auto ir = table.i_ratio();
    const auto kr = table.k_ratio();
    for (int i = 0; i < n; ++i) p *= ir[i] * kr[i];
    return p;
}

double ik_product(int n, double x) {
    require_positive(x, "ik_product");
    return ik_product(RatioTable(n, x), n);
}

double ik_product_split(const RatioTable& at_r, const RatioTable& at_R, int n) {
    if (n < 0 || n > at_r.order_max() || n > at_R.order_max())
        throw std::domain_error("ik_product_split: order outside ratio table");
    const double xr = at_r.argument();
    const double xR = at_R.argument();
    if (xr > xR) throw std::domain_error("ik_product_split: requires r <= R");
    double p = i0_scaled(xr) * k0_scaled(xR);
    if (n == 0) return p * std::exp(xr - xR);
    const double spread = std::exp((xr - xR) / n);
    const auto ir = at_r.i_ratio();
    const auto kr = at_R.k_ratio();
    for (int i = 0; i < n; ++i) p *= spread * ir[i] * kr[i];
    return p;
}

double ik_product_split(int n, double kappa, double r, double R) {
    if (!(kappa > 0)) throw std::domain_error("ik_product_split: kappa must be positive");
    if (!(r >= 0) || r > R) throw std::domain_error("ik_product_split: requires 0 <= r <= R");
    if (r == 0) return n == 0 ? k0_scaled(kappa * R) * std::exp(-kappa * R) : 0.0;
    return ik_product_split(RatioTable(n, kappa * r), RatioTable(n, kappa * R), n);
}

}  // namespace mbessel
