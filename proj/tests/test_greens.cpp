#include "doctest.h"
#include "oracles.hpp"

#include "mbessel/greens.hpp"
#include "mbessel/harness.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace mbessel;
using oracle::mp;

namespace {

double rel(double got, const mp& want) { return static_cast<double>(abs((mp(got) - want) / want)); }

std::vector<double> evaluate(int n, double kappa, const DhtPlan& plan, const TestCase& tc,
                             std::span<const double> points) {
    std::vector<double> f;
    for (double r : plan.nodes) f.push_back(test_forcing(tc, r));
    return solve_mode(n, kappa, plan, dht_apply(plan, f), points).values;
}

}  // namespace

TEST_CASE("axis values") {
    for (double kappa : {0.5, 3.0, 40.0}) {
        const double alpha = bessel_j_zeros(1, 2).zeros[1] / 4.0;
        CHECK(green_convolve(1, kappa, alpha, 0.0, 4.0) == 0.0);
        CHECK(green_convolve(5, kappa, alpha, 0.0, 4.0) == 0.0);
    }
    // far from the boundary only the local term remains: kAxisSign / (alpha^2 + kappa^2)
    const double alpha = bessel_j_zeros(0, 3).zeros[2] / 16.0;
    const double axis = green_convolve(0, 16.0, alpha, 0.0, 16.0);
    CHECK(kAxisSign == -1.0);
    CHECK(axis == doctest::Approx(kAxisSign / (alpha * alpha + 256.0)).epsilon(1e-15));

    // with kappa R small the boundary term matters and the value follows the closed form
    const double a1 = bessel_j_zeros(0, 1).zeros[0] / 2.0;
    const mp want = oracle::green_convolve_closed(0, mp(0.3), mp(a1), mp(0), mp(2));
    CHECK(rel(green_convolve(0, 0.3, a1, 0.0, 2.0), want) <= 1e-12);
    CHECK(std::fabs(green_convolve(0, 0.3, a1, 0.0, 2.0) - (-1.0 / (a1 * a1 + 0.09))) > 1e-3);
}

TEST_CASE("convolution against quadrature of the Green's function") {
    const double R = 4.0;
    const double alpha = bessel_j_zeros(2, 1).zeros[0] / R;
    const mp want = oracle::green_convolve_quadrature(2, mp(3), mp(alpha), mp(R / 2), mp(R));
    CHECK(rel(green_convolve(2, 3.0, alpha, R / 2, R), want) <= 1e-10);
}

TEST_CASE("random small-parameter cases against both oracles") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> order(0, 8), zero_index(0, 9);
    std::uniform_real_distribution<double> u(0, 1);
    double worst_quad = 0, worst_closed = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = order(rng);
        const double R = 0.5 + 7.5 * u(rng);
        const double kappa = (0.05 + 29.95 * u(rng)) / R;
        const double alpha = bessel_j_zeros(n, 10).zeros[zero_index(rng)] / R;
        const double r = trial % 7 == 0 ? R : R * u(rng);
        const double got = green_convolve(n, kappa, alpha, r, R);
        const mp quad = oracle::green_convolve_quadrature(n, mp(kappa), mp(alpha), mp(r), mp(R));
        const mp closed = oracle::green_convolve_closed(n, mp(kappa), mp(alpha), mp(r), mp(R));
        worst_quad = std::max(worst_quad, rel(got, quad));
        worst_closed = std::max(worst_closed, rel(got, closed));
        INFO("n = " << n << ", kappa = " << kappa << ", alpha = " << alpha << ", r = " << r << ", R = " << R);
        CHECK(rel(got, quad) <= 1e-10);
        CHECK(rel(got, closed) <= 1e-11);
    }
    MESSAGE("worst relative error: quadrature " << worst_quad << ", closed form " << worst_closed);
}

TEST_CASE("tabulated integral oracles") {
    CHECK(oracle::integral_ij(3, mp(2), mp(1.5), mp(0)) == 0);
    CHECK(abs(oracle::integral_kj(0, mp(2), mp(1.5), mp("1e-10"))) < mp("1e-15"));
    boost::math::quadrature::tanh_sinh<mp> integrator;
    const mp quad = integrator.integrate(
        [](const mp& s) { return oracle::bessel_i(2, 3 * s) * oracle::bessel_j_series(2, mp(1.5) * s) * s; }, mp(0),
        mp(2), mp("1e-30"));
    CHECK(static_cast<double>(abs(oracle::integral_ij(2, mp(3), mp(1.5), mp(2)) / quad - 1)) <= 1e-11);
}

TEST_CASE("explicit tables give the same values") {
    const int n = 6;
    const double kappa = 2.5, R = 3.0, r = 1.25;
    const double alpha = bessel_j_zeros(n, 4).zeros[3] / R;
    const RatioTable at_r(n + 1, kappa * r), at_R(n + 1, kappa * R);
    CHECK(green_convolve(n, kappa, alpha, r, R, at_r, at_R) == green_convolve(n, kappa, alpha, r, R));
    CHECK_THROWS_AS(green_convolve(n, kappa, alpha, r, R, RatioTable(n, kappa * r), at_R), std::domain_error);
    CHECK_THROWS_AS(green_convolve(n, 0.0, alpha, r, R), std::domain_error);
    CHECK_THROWS_AS(green_convolve(n, kappa, alpha, R + 1e-9, R), std::domain_error);
    CHECK_THROWS_AS(green_convolve(n, kappa, alpha, -1e-9, R), std::domain_error);
}

TEST_CASE("solve_mode is the coefficient-weighted sum of convolutions") {
    const int n = 3;
    const double kappa = 5.0, R = 2.0;
    const auto plan = dht_plan(n, 16, R);
    HankelCoefficients coeffs{n, R, {}, std::vector<double>(16, 0.0)};
    for (int j = 0; j < 16; ++j) coeffs.alpha.push_back(plan.zeros.zeros[j] / R);
    const std::vector<double> points{0.0, 0.3, 1.0, 1.7, 2.0};

    for (double v : solve_mode(n, kappa, plan, coeffs, points).values) CHECK(v == 0.0);

    coeffs.c[4] = 1.0;
    const auto single = solve_mode(n, kappa, plan, coeffs, points);
    CHECK(single.order == n);
    CHECK(single.kappa == kappa);
    for (std::size_t i = 0; i < points.size(); ++i)
        CHECK(single.values[i] == green_convolve(n, kappa, coeffs.alpha[4], points[i], R));
    CHECK(single.values[0] == 0.0);

    HankelCoefficients wrong = coeffs;
    wrong.order = n + 1;
    CHECK_THROWS_AS(solve_mode(n, kappa, plan, wrong, points), std::invalid_argument);
    CHECK_THROWS_AS(solve_mode(n, kappa, plan, coeffs, std::vector<double>{2.5}), std::domain_error);
}

TEST_CASE("full pipeline on DHT nodes reaches round-off") {
    const TestCase tc(1.0, 0.0, 2, 0, 16.0);
    const auto plan = dht_plan(0, 128, 16.0);
    const auto u = evaluate(0, 16.0, plan, tc, plan.nodes);
    std::vector<double> exact;
    for (double r : plan.nodes) exact.push_back(test_solution(tc, r));
    const double eps = linf_error(u, exact);
    MESSAGE("epsilon = " << eps);
    CHECK(eps <= 1e-12);
}

TEST_CASE("solution vanishes on the axis for nonzero order") {
    for (int n : {1, 2, 17, 64}) {
        for (double kappa : {0.1, 16.0, 1024.0}) {
            const TestCase tc(1.0, 8.0, std::max(n, 2), n, kappa);
            const auto plan = dht_plan(n, 32, 16.0);
            const std::vector<double> axis{0.0};
            CHECK(evaluate(n, kappa, plan, tc, axis)[0] == 0.0);
        }
    }
}

TEST_CASE("second-order finite-difference residual") {
    struct Case {
        int n;
        double kappa, beta;
    };
    for (const Case c : {Case{0, 16.0, 0.0}, Case{5, 1.0, 8.0}, Case{32, 1024.0, 16.0}}) {
        const TestCase tc(1.0, c.beta, sweep_exponent(c.n), c.n, c.kappa);
        const auto plan = dht_plan(c.n, 256, 16.0);
        const std::vector<double> probes{1.3, 2.1, 2.9, 3.6};
        std::vector<double> errs;
        for (double h : {0.04, 0.02, 0.01}) {
            std::vector<double> pts;
            for (double r : probes) {
                pts.push_back(r - h);
                pts.push_back(r);
                pts.push_back(r + h);
            }
            const auto u = evaluate(c.n, c.kappa, plan, tc, pts);
            double worst = 0, scale = 0;
            for (std::size_t k = 0; k < probes.size(); ++k) {
                const double r = probes[k];
                const double um = u[3 * k], u0 = u[3 * k + 1], up = u[3 * k + 2];
                const double lu = (up - 2 * u0 + um) / (h * h) + (up - um) / (2 * h * r) -
                                  (c.n * c.n / (r * r) + c.kappa * c.kappa) * u0;
                const double f = test_forcing(tc, r);
                worst = std::max(worst, std::fabs(lu - f));
                scale = std::max(scale, std::fabs(f));
            }
            errs.push_back(worst / scale);
        }
        MESSAGE("n = " << c.n << ": residual " << errs[0] << ", " << errs[1] << ", " << errs[2]);
        for (std::size_t k = 1; k < errs.size(); ++k) {
            const double order = std::log2(errs[k - 1] / errs[k]);
            CHECK(order == doctest::Approx(2.0).epsilon(0.1));
        }
    }
}

TEST_CASE("outside the support the solution follows K_n") {
    // a bump forcing negligible beyond r ~ 6 leaves u(r) proportional to K_n(kappa r) there
    for (int n : {0, 3}) {
        const double kappa = 1.0;
        const TestCase bump(1.0, 0.0, std::max(n, 2), n, kappa);
        const auto plan = dht_plan(n, 256, 16.0);
        std::vector<double> f;
        for (double r : plan.nodes) f.push_back(test_solution(bump, r));
        const std::vector<double> pts{8.0, 10.0, 12.0};
        const auto u = solve_mode(n, kappa, plan, dht_apply(plan, f), pts).values;
        for (int k : {1, 2}) {
            const mp want = oracle::bessel_k_series(n, mp(pts[k])) / oracle::bessel_k_series(n, mp(pts[0]));
            CHECK(rel(u[k] / u[0], want) <= 1e-8);
        }
        CHECK(std::fabs(u[2]) < std::fabs(u[1]));
        CHECK(std::fabs(u[1]) < std::fabs(u[0]));
    }
}
