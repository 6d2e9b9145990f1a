#include "doctest.h"
#include "oracles.hpp"

#include "mbessel/specfun.hpp"

#include <cmath>
#include <vector>

using namespace mbessel;
using oracle::mp;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
    // straddle the branch switches
    for (double x : {1.999999, 2.0, 2.000001, 24.99999, 25.0, 25.00001}) xs.push_back(x);
    return xs;
}

double rel_err(double got, const mp& want) { return static_cast<double>(abs((mp(got) - want) / want)); }

}  // namespace

TEST_CASE("scaled I and K kernels match extended precision to 5e-15") {
    double worst_i0 = 0, worst_i1 = 0, worst_k0 = 0, worst_k1 = 0;
    for (double x : log_grid(1e-8, 700.0, 48)) {
        const mp xm = x;
        worst_i0 = std::max(worst_i0, rel_err(i0_scaled(x), oracle::bessel_i_scaled(0, xm)));
        worst_i1 = std::max(worst_i1, rel_err(i1_scaled(x), oracle::bessel_i_scaled(1, xm)));
        worst_k0 = std::max(worst_k0, rel_err(k0_scaled(x), oracle::bessel_k_scaled(0, xm)));
        worst_k1 = std::max(worst_k1, rel_err(k1_scaled(x), oracle::bessel_k_scaled(1, xm)));
    }
    MESSAGE("worst relative errors: I0 " << worst_i0 << ", I1 " << worst_i1 << ", K0 " << worst_k0 << ", K1 "
                                         << worst_k1);
    CHECK(worst_i0 <= 5e-15);
    CHECK(worst_i1 <= 5e-15);
    CHECK(worst_k0 <= 5e-15);
    CHECK(worst_k1 <= 5e-15);
}

TEST_CASE("scaled kernels at the origin and the extremes") {
    CHECK(i0_scaled(0.0) == 1.0);
    CHECK(i1_scaled(0.0) == 0.0);
    CHECK_THROWS_AS(k0_scaled(0.0), std::domain_error);
    CHECK_THROWS_AS(k1_scaled(-1.0), std::domain_error);
    CHECK_THROWS_AS(i0_scaled(-1.0), std::domain_error);

    for (double x : {1e-300, 1e-30, 1e30, 1e300}) {
        for (double v : {i0_scaled(x), i1_scaled(x), k0_scaled(x), k1_scaled(x)}) {
            CHECK(std::isfinite(v));
            CHECK(v >= 0.0);
        }
        CHECK(k0_scaled(x) > 0.0);
    }
}

TEST_CASE("i0_scaled(1) against the summed series") {
    // e^{-1} sum_k 1/(4^k k!^2), summed in 50-digit arithmetic
    const mp want = oracle::bessel_i_scaled(0, mp(1));
    CHECK(rel_err(i0_scaled(1.0), want) <= 5e-15);
    CHECK(i0_scaled(1.0) == doctest::Approx(0.46575960759364043).epsilon(1e-15));
}

TEST_CASE("I0 K0 approaches 1/(2x)") {
    for (double x : {1e2, 1e4, 1e6, 1e8}) {
        const double prod = i0_scaled(x) * k0_scaled(x);
        CHECK(std::fabs(prod * 2 * x - 1.0) < 1.0 / x);
    }
}

TEST_CASE("ScaledBessel value ranges") {
    double prev_k0 = k0_scaled(1e-6);
    for (double x = 1e-3; x < 1e3; x *= 1.3) {
        const double i0 = i0_scaled(x);
        CHECK(i0 > 0.0);
        CHECK(i0 <= 1.0);
        const double k0 = k0_scaled(x);
        CHECK(k0 < prev_k0);
        prev_k0 = k0;
    }
}
