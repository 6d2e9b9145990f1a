#include "mbessel/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mbessel {

BlockGrid block_grid(int N, int P, double R) {
    if (N < 1 || !(R > 0)) throw std::domain_error("block_grid: requires N >= 1 and R > 0");
    std::vector<double> b(N + 1);
    for (int n = 0; n <= N; ++n) b[n] = R * n / N;
    b[N] = R;
    return block_grid(std::move(b), P);
}

BlockGrid block_grid(std::vector<double> boundaries, int P) {
    if (P < 2) throw std::domain_error("block_grid: requires P >= 2");
    if (boundaries.size() < 2 || boundaries.front() != 0.0)
        throw std::domain_error("block_grid: boundaries must start at 0 and hold at least one block");
    for (std::size_t i = 1; i < boundaries.size(); ++i)
        if (!(boundaries[i] > boundaries[i - 1])) throw std::domain_error("block_grid: boundaries must increase");

    BlockGrid grid;
    grid.block_count = static_cast<int>(boundaries.size()) - 1;
    grid.points_per_block = P;
    grid.boundaries = std::move(boundaries);

    // sin((P - 2p) pi / 2P) equals cos(p pi / P) and is exactly antisymmetric about p = P/2
    std::vector<double> c(P + 1);
    for (int p = 0; p <= P; ++p) c[p] = std::sin((P - 2 * p) * std::numbers::pi / (2 * P));

    grid.nodes.reserve(static_cast<std::size_t>(grid.block_count) * (P + 1));
    for (int n = 0; n < grid.block_count; ++n) {
        const double lo = grid.boundaries[n], hi = grid.boundaries[n + 1];
        const double mid = (hi + lo) / 2, half = (hi - lo) / 2;
        grid.nodes.push_back(hi);
        for (int p = 1; p < P; ++p) grid.nodes.push_back(mid + half * c[p]);
        grid.nodes.push_back(lo);
    }

    grid.weights.resize(P + 1);
    for (int p = 0; p <= P; ++p) grid.weights[p] = (p % 2 ? -1.0 : 1.0) * (p == 0 || p == P ? 0.5 : 1.0);
    return grid;
}

int locate_block(const BlockGrid& grid, double r) {
    if (!(r >= 0.0 && r <= grid.radius())) throw std::domain_error("interpolate: target outside [0, R]");
    const auto first = grid.boundaries.begin() + 1;
    const auto it = std::lower_bound(first, grid.boundaries.end(), r);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - first, grid.block_count - 1));
}

std::vector<double> interpolate(const BlockGrid& grid, std::span<const double> samples,
                                std::span<const double> targets) {
    if (samples.size() != grid.size()) throw std::invalid_argument("interpolate: sample count mismatch");
    const int P = grid.points_per_block;
    std::vector<double> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double t = targets[i];
        const std::size_t base = static_cast<std::size_t>(locate_block(grid, t)) * (P + 1);
        double num = 0.0, den = 0.0;
        bool hit = false;
        for (int p = 0; p <= P; ++p) {
            const double d = t - grid.nodes[base + p];
            if (d == 0.0) {
                out[i] = samples[base + p];
                hit = true;
                break;
            }
            const double w = grid.weights[p] / d;
            num += w * samples[base + p];
            den += w;
        }
        if (!hit) out[i] = num / den;
    }
    return out;
}

}  // namespace mbessel
