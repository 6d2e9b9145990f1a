#pragma once

#include <span>
#include <vector>

namespace mbessel {

/// N blocks covering [0, R], each carrying P+1 Chebyshev points of the second kind.
/// Within block n the nodes run from R_{n+1} (p = 0) down to R_n (p = P), so every
/// interior boundary appears twice in `nodes`.
struct BlockGrid {
    int block_count = 0;
    int points_per_block = 0;
    std::vector<double> boundaries;  // R_0 = 0 < ... < R_N = R
    std::vector<double> nodes;       // N (P+1) radii
    std::vector<double> weights;     // barycentric weights (-1)^p delta_p, shared by all blocks

    [[nodiscard]] double radius() const { return boundaries.back(); }
    [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Uniform blocks R_n = n R / N. Requires N >= 1, P >= 2, R > 0.
BlockGrid block_grid(int N, int P, double R);

/// Grid with caller-chosen boundaries (strictly increasing, starting at 0).
BlockGrid block_grid(std::vector<double> boundaries, int P);

/// Index of the block containing r; interior boundaries belong to the left block.
int locate_block(const BlockGrid& grid, double r);

/// Piecewise barycentric interpolation of samples on grid.nodes. Targets outside
/// [0, R] throw std::domain_error.
std::vector<double> interpolate(const BlockGrid& grid, std::span<const double> samples,
                                std::span<const double> targets);

}  // namespace mbessel
