#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace mbessel {

/// Raised when an iterative special-function routine fails to converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exponentially scaled modified Bessel functions of orders 0 and 1.
// The I kernels return I_n(x) e^{-x} (x >= 0), the K kernels K_n(x) e^{x} (x > 0).
double i0_scaled(double x);
double i1_scaled(double x);
double k0_scaled(double x);
double k1_scaled(double x);

/// Bessel function of the first kind J_n(x) for 0 <= n <= 512, 0 <= x <= 2e4.
/// Absolute error is below 1e-13 over that box.
double bessel_j(int n, double x);

/// Leading positive zeros of J_n, strictly increasing.
struct BesselZeros {
    int order = 0;
    std::vector<double> zeros;

    [[nodiscard]] std::size_t count() const { return zeros.size(); }
};

/// First `count` positive zeros of J_n. Each zero is refined by safeguarded Newton
/// iteration inside a sign-change bracket; the cost is O(1) evaluations per zero.
/// Throws ConvergenceError if a zero does not converge in 50 iterations.
BesselZeros bessel_j_zeros(int n, int count);

/// K_{i+1}(x)/K_i(x) for i = 0..n-1, by upward recurrence seeded with K_1/K_0.
std::vector<double> k_ratio_sequence(int n, double x);

/// I_{i+1}(x)/I_i(x) for i = 0..n-1, by downward recurrence. The top ratio comes from
/// the ascending series when (x/2)^2 < n+1, otherwise from Olver's uniform expansion
/// at order max(n+8, 32).
std::vector<double> i_ratio_sequence(int n, double x);

// Olver's uniform large-order expansion of I_n(x), truncated after u_3.
// olver_i_log returns the log of the estimate, olver_i the estimate scaled by e^{-x}
// (it may underflow), olver_i_ratio the estimate of I_n(x)/I_{n-1}(x) formed without
// evaluating either factor.
double olver_i_log(int n, double x);
double olver_i(int n, double x);
double olver_i_ratio(int n, double x);
/// eta(z) = sqrt(1+z^2) + log(z / (1 + sqrt(1+z^2))).
double olver_eta(double z);

/// Ratios I_{i+1}/I_i and K_{i+1}/K_i at one argument, i = 0..order_max-1.
class RatioTable {
public:
    RatioTable(int order_max, double x);

    [[nodiscard]] int order_max() const { return order_max_; }
    [[nodiscard]] double argument() const { return x_; }
    [[nodiscard]] std::span<const double> i_ratio() const { return i_ratio_; }
    [[nodiscard]] std::span<const double> k_ratio() const { return k_ratio_; }

private:
    int order_max_;
    double x_;
    std::vector<double> i_ratio_;
    std::vector<double> k_ratio_;
};

/// I_n(x) K_n(x), built from the scaled order-zero pair and pairwise ratio products.
double ik_product(int n, double x);
/// Same, reusing a table at x with order_max >= n.
double ik_product(const RatioTable& table, int n);

/// I_n(kappa r) K_n(kappa R) for 0 <= r <= R. The factor e^{kappa (r-R)} is spread
/// over the n ratio pairs so that no intermediate overflows. The result underflows
/// to zero when the true value is below the double range (kappa (R-r) beyond ~745).
double ik_product_split(int n, double kappa, double r, double R);
/// Same, reusing tables at kappa r and kappa R (both with order_max >= n, r > 0).
double ik_product_split(const RatioTable& at_r, const RatioTable& at_R, int n);

}  // namespace mbessel
