#include "doctest.h"

#include "mbessel/dht.hpp"
#include "mbessel/interp.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace mbessel;

namespace {

std::vector<double> sampled(const BlockGrid& grid, auto&& f) {
    std::vector<double> out;
    for (double r : grid.nodes) out.push_back(f(r));
    return out;
}

}  // namespace

TEST_CASE("node layout") {
    const auto g = block_grid(1, 2, 2.0);
    REQUIRE(g.nodes.size() == 3);
    CHECK(g.nodes[0] == 2.0);
    CHECK(g.nodes[1] == 1.0);
    CHECK(g.nodes[2] == 0.0);
    CHECK(g.weights == std::vector<double>{0.5, -1.0, 0.5});

    const auto grid = block_grid(5, 7, 3.0);
    CHECK(grid.size() == 5 * 8);
    CHECK(grid.boundaries.front() == 0.0);
    CHECK(grid.boundaries.back() == 3.0);
    for (int n = 0; n < 5; ++n) {
        const double* block = grid.nodes.data() + n * 8;
        CHECK(block[0] == grid.boundaries[n + 1]);
        CHECK(block[7] == grid.boundaries[n]);
        for (int p = 1; p <= 7; ++p) CHECK(block[p] < block[p - 1]);
        // the first node of block n and the last node of block n+1 are both R_{n+1}
        if (n + 1 < 5) CHECK(block[0] == grid.nodes[(n + 1) * 8 + 7]);
        const double mid = (grid.boundaries[n] + grid.boundaries[n + 1]) / 2;
        const double half = (grid.boundaries[n + 1] - grid.boundaries[n]) / 2;
        for (int p = 0; p <= 7; ++p)
            CHECK(block[p] == doctest::Approx(mid + half * std::cos(p * std::numbers::pi / 7)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(block_grid(0, 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(block_grid(2, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(block_grid({0.0, 1.0, 1.0}, 4), std::domain_error);
}

TEST_CASE("block lookup") {
    const auto grid = block_grid(4, 4, 8.0);
    CHECK(locate_block(grid, 0.0) == 0);
    CHECK(locate_block(grid, 2.0) == 0);
    CHECK(locate_block(grid, std::nextafter(2.0, 3.0)) == 1);
    CHECK(locate_block(grid, 7.9) == 3);
    CHECK(locate_block(grid, 8.0) == 3);
    CHECK_THROWS_AS(locate_block(grid, -1e-300), std::domain_error);
    CHECK_THROWS_AS(locate_block(grid, std::nextafter(8.0, 9.0)), std::domain_error);
    CHECK_THROWS_AS(locate_block(grid, std::nan("")), std::domain_error);
}

TEST_CASE("nodes are reproduced exactly") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    const auto grid = block_grid(6, 9, 2.5);
    std::vector<double> s(grid.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = u(rng);
    // make the duplicated boundary samples agree
    for (int n = 0; n + 1 < 6; ++n) s[(n + 1) * 10 + 9] = s[n * 10];
    const auto back = interpolate(grid, s, grid.nodes);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back[i] == s[i]);
}

TEST_CASE("polynomials up to degree P are reproduced") {
    {
        const auto grid = block_grid(3, 4, 1.5);
        const auto s = sampled(grid, [](double r) { return r * r * r; });
        std::vector<double> targets;
        for (int i = 0; i <= 97; ++i) targets.push_back(1.5 * i / 97.0);
        const auto v = interpolate(grid, s, targets);
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(std::fabs(v[i] - std::pow(targets[i], 3)) <= 1e-13 * std::max(1.0, std::pow(targets[i], 3)));
    }

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> pick(2, 20);
    for (int trial = 0; trial < 40; ++trial) {
        const int P = pick(rng);
        const int N = pick(rng) / 2;
        const double R = 1.0 + 10.0 * (u(rng) + 1.0);
        std::vector<double> b{0.0};
        for (int n = 0; n < N; ++n) b.push_back(b.back() + 0.1 + (u(rng) + 1.0));
        for (auto& x : b) x *= R / b.back();
        b.back() = R;
        const auto grid = block_grid(b, P);

        std::vector<double> coef(P + 1);
        for (auto& c : coef) c = u(rng);
        auto poly = [&](double r) {
            const double t = r / R;
            double v = 0;
            for (int k = P; k >= 0; --k) v = v * t + coef[k];
            return v;
        };
        const auto s = sampled(grid, poly);
        std::vector<double> targets;
        for (int i = 0; i < 50; ++i) targets.push_back(R * (u(rng) + 1.0) / 2);
        const auto v = interpolate(grid, s, targets);
        double scale = 0;
        for (double c : coef) scale += std::fabs(c);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::fabs(v[i] - poly(targets[i])) <= 1e-13 * scale);
    }
}

TEST_CASE("oscillatory test function onto DHT nodes") {
    // (r/r_max)^8 exp(-(r^2 - r_max^2)) cos(8 r), r_max = 2
    auto f = [](double r) { return std::pow(r / 2, 8) * std::exp(4 - r * r) * std::cos(8 * r); };
    const auto grid = block_grid(32, 16, 16.0);
    const auto plan = dht_plan(8, 128, 16.0);
    const auto v = interpolate(grid, sampled(grid, f), plan.nodes);
    double worst = 0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::fabs(v[i] - f(plan.nodes[i])));
    MESSAGE("max interpolation error " << worst);
    CHECK(worst <= 1e-12);
}

TEST_CASE("bounded data stays bounded") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int P : {2, 4, 8, 16, 32}) {
        const auto grid = block_grid(3, P, 1.0);
        const double bound = 1.0 + 2.0 / std::numbers::pi * std::log(P + 1.0) + 1.0;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> s(grid.size());
            for (auto& x : s) x = u(rng);
            std::vector<double> targets;
            for (int i = 0; i < 200; ++i) targets.push_back((u(rng) + 1.0) / 2);
            for (double v : interpolate(grid, s, targets)) CHECK(std::fabs(v) <= bound);
        }
    }
}

TEST_CASE("interpolation refuses to extrapolate") {
    const auto grid = block_grid(2, 4, 1.0);
    const std::vector<double> s(grid.size(), 1.0);
    CHECK_THROWS_AS(interpolate(grid, s, std::vector<double>{1.0 + 1e-12}), std::domain_error);
    CHECK_THROWS_AS(interpolate(grid, s, std::vector<double>{-0.5}), std::domain_error);
    CHECK_THROWS_AS(interpolate(grid, std::vector<double>(3), std::vector<double>{0.5}), std::invalid_argument);
}
