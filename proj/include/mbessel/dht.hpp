#pragma once

#include "mbessel/specfun.hpp"

#include <span>
#include <vector>

namespace mbessel {

// Discrete Hankel transform of order n on [0, R] (Lemoine's quadrature on the zeros
// of J_n). zeros holds x_1..x_{M+1}; the last one only sets the scale.
struct DhtPlan {
    int order = 0;
    int size = 0;
    double radius = 0.0;
    BesselZeros zeros;
    std::vector<double> nodes;        // r_m = x_m R / x_{M+1}
    std::vector<double> weights;      // 1 / J_{n+1}(x_m)^2
    std::vector<double> inv_abs_jn1;  // 1 / |J_{n+1}(x_m)|
    std::vector<double> matrix;       // B, row-major M x M, exactly symmetric

    [[nodiscard]] double scale_zero() const { return zeros.zeros.back(); }
    [[nodiscard]] double at(int m, int j) const { return matrix[static_cast<std::size_t>(m) * size + j]; }
};

/// f(r) ~ sum_j c[j] J_n(alpha[j] r), with J_n(alpha[j] R) = 0.
struct HankelCoefficients {
    int order = 0;
    double radius = 0.0;
    std::vector<double> alpha;
    std::vector<double> c;
};

/// Builds the order-n plan with M nodes on [0, R]. Requires M >= 4, R > 0.
DhtPlan dht_plan(int n, int M, double R);

/// Fourier-Bessel coefficients of samples taken at plan.nodes.
HankelCoefficients dht_apply(const DhtPlan& plan, std::span<const double> samples);

/// y = B x, the symmetric core of the transform.
std::vector<double> dht_sandwich(const DhtPlan& plan, std::span<const double> x);

}  // namespace mbessel
