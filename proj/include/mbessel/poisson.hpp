#pragma once

#include "mbessel/interp.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mbessel {

/// Radial block grid x uniform periodic theta and z nodes. Field arrays are stored
/// radial-fastest: index = i + n_r (t + n_theta j).
struct CylGrid {
    BlockGrid radial;
    int n_theta = 0;
    int n_z = 0;
    double length_z = 0.0;

    /// Requires even n_theta >= 4, even n_z >= 4, length_z > 0.
    CylGrid(BlockGrid radial, int n_theta, int n_z, double length_z);

    [[nodiscard]] std::size_t n_radial() const { return radial.size(); }
    [[nodiscard]] std::size_t size() const { return n_radial() * n_theta * n_z; }
    [[nodiscard]] double theta(int t) const;
    [[nodiscard]] double z(int j) const;
};

/// kappa_k = 2 pi |k| / L_z.
double axial_wavenumber(int k, double length_z);

/// Fourier modes (n, k), n in [-n_theta/2, n_theta/2), k in [-n_z/2, n_z/2), each with
/// radial samples on the block grid nodes.
struct ModeSet {
    int n_theta = 0;
    int n_z = 0;
    std::size_t n_radial = 0;
    std::vector<std::complex<double>> data;

    [[nodiscard]] std::size_t index(int n, int k) const;
    std::complex<double>* radial(int n, int k) { return data.data() + index(n, k) * n_radial; }
    [[nodiscard]] const std::complex<double>* radial(int n, int k) const { return data.data() + index(n, k) * n_radial; }
};

/// Discrete Fourier transform over theta and z, scaled by 1/(n_theta n_z) so that
/// resynthesize(decompose(f)) = f.
ModeSet decompose(const CylGrid& grid, std::span<const double> f);
std::vector<std::complex<double>> resynthesize(const CylGrid& grid, const ModeSet& modes);

struct PoissonOptions {
    int dht_size = 128;
    int threads = 0;  // 0 picks the hardware concurrency
    /// Optional order in which modes are solved, a permutation of 0..n_theta n_z - 1.
    std::vector<std::size_t> schedule;
    /// Largest tolerated kappa = 0 content relative to max|f|.
    double mean_mode_tolerance = 1e-12;
};

struct PoissonResult {
    std::vector<double> u;
    double imag_residue = 0.0;  // max|Im u| / max|Re u| before the imaginary part is dropped
};

/// Solves u_rr + u_r/r + u_thth/r^2 + u_zz = f mode by mode with the radiation condition
/// at the outer radius. Throws std::domain_error when the kappa = 0 modes carry content.
PoissonResult solve_poisson(const CylGrid& grid, std::span<const double> f, const PoissonOptions& options = {});

}  // namespace mbessel
