#pragma once

#include "mbessel/dht.hpp"
#include "mbessel/specfun.hpp"

#include <span>
#include <vector>

namespace mbessel {

/// Sign of the axis value of the order-0 convolution, -1/(alpha^2 + kappa^2) in the
/// far-field limit. It follows from G_n = -s I_n(kappa r_<) K_n(kappa r_>), which
/// makes u = int G f ds satisfy u'' + u'/r - (n^2/r^2 + kappa^2) u = f.
inline constexpr double kAxisSign = -1.0;

struct ModeSolution {
    int order = 0;
    double kappa = 0.0;
    double radius = 0.0;
    std::vector<double> eval_points;
    std::vector<double> values;
};

/// int_0^R G_n(kappa, r, s) J_n(alpha s) ds for a wavenumber alpha with J_n(alpha R) = 0.
/// The tables must hold at least n+1 ratios at kappa r and kappa R. At r = 0 the
/// table at kappa r is not consulted.
double green_convolve(int n, double kappa, double alpha, double r, double R, const RatioTable& ratios_r,
                      const RatioTable& ratios_R);

/// Same, building both tables internally.
double green_convolve(int n, double kappa, double alpha, double r, double R);

/// u(r_i) = sum_m c_m int_0^R G_n(kappa, r_i, s) J_n(alpha_m s) ds. One table is built
/// per evaluation point and one at kappa R.
ModeSolution solve_mode(int n, double kappa, const DhtPlan& plan, const HankelCoefficients& coeffs,
                        std::span<const double> eval_points);

}  // namespace mbessel
