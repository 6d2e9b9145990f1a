#include "mbessel/greens.hpp"

#include <cmath>
#include <stdexcept>

namespace mbessel {
namespace {

// The r-dependent pieces of the convolution: split = I_n(kr) K_n(kR) and
// local = kr I_n(kr) K_n(kr) [I_{n+1}/I_n + K_{n+1}/K_n](kr), which is 1 up to rounding.
struct PointFactors {
    double split = 0.0;
    double local = 0.0;
};

PointFactors point_factors(int n, double kappa, double r, double R, const RatioTable* at_r, const RatioTable& at_R) {
    PointFactors f;
    if (r == 0.0) {
        f.split = ik_product_split(n, kappa, 0.0, R);
        f.local = n == 0 ? 1.0 : 0.0;
        return f;
    }
    f.split = ik_product_split(*at_r, at_R, n);
    f.local = kappa * r * ik_product(*at_r, n) * (at_r->i_ratio()[n] + at_r->k_ratio()[n]);
    return f;
}

// alpha J_{n+1}(alpha R) - kappa J_n(alpha R) K_{n+1}(kR)/K_n(kR)
double boundary_bracket(int n, double kappa, double alpha, double R, double k_ratio_R) {
    return alpha * bessel_j(n + 1, alpha * R) - kappa * bessel_j(n, alpha * R) * k_ratio_R;
}

double combine(double kappa, double alpha, double R, const PointFactors& f, double bracket, double j_r) {
    return kAxisSign * (R * f.split * bracket + f.local * j_r) / (alpha * alpha + kappa * kappa);
}

void check_args(int n, double kappa, double r, double R) {
    if (n < 0) throw std::domain_error("green_convolve: negative order");
    if (!(kappa > 0.0)) throw std::domain_error("green_convolve: kappa must be positive");
    if (!(R > 0.0) || !(r >= 0.0 && r <= R)) throw std::domain_error("green_convolve: r outside [0, R]");
}

void check_table(const RatioTable& t, int n) {
    if (t.order_max() < n + 1) throw std::domain_error("green_convolve: ratio table too short");
}

}  // namespace

double green_convolve(int n, double kappa, double alpha, double r, double R, const RatioTable& ratios_r,
                      const RatioTable& ratios_R) {
    check_args(n, kappa, r, R);
    check_table(ratios_R, n);
    if (r > 0.0) check_table(ratios_r, n);
    const auto f = point_factors(n, kappa, r, R, &ratios_r, ratios_R);
    const double bracket = boundary_bracket(n, kappa, alpha, R, ratios_R.k_ratio()[n]);
    return combine(kappa, alpha, R, f, bracket, bessel_j(n, alpha * r));
}

double green_convolve(int n, double kappa, double alpha, double r, double R) {
    check_args(n, kappa, r, R);
    const RatioTable at_R(n + 1, kappa * R);
    if (r == 0.0) return green_convolve(n, kappa, alpha, r, R, at_R, at_R);
    return green_convolve(n, kappa, alpha, r, R, RatioTable(n + 1, kappa * r), at_R);
}

ModeSolution solve_mode(int n, double kappa, const DhtPlan& plan, const HankelCoefficients& coeffs,
                        std::span<const double> eval_points) {
    const double R = plan.radius;
    const int M = plan.size;
    if (coeffs.order != n || plan.order != n) throw std::invalid_argument("solve_mode: order mismatch");
    if (coeffs.c.size() != static_cast<std::size_t>(M) || coeffs.alpha.size() != coeffs.c.size())
        throw std::invalid_argument("solve_mode: coefficient count mismatch");
    for (double r : eval_points) check_args(n, kappa, r, R);

    const RatioTable at_R(n + 1, kappa * R);
    std::vector<double> bracket(M);
    for (int m = 0; m < M; ++m) bracket[m] = boundary_bracket(n, kappa, coeffs.alpha[m], R, at_R.k_ratio()[n]);

    ModeSolution out;
    out.order = n;
    out.kappa = kappa;
    out.radius = R;
    out.eval_points.assign(eval_points.begin(), eval_points.end());
    out.values.resize(eval_points.size());
    for (std::size_t i = 0; i < eval_points.size(); ++i) {
        const double r = eval_points[i];
        PointFactors f;
        if (r > 0.0) {
            const RatioTable at_r(n + 1, kappa * r);
            f = point_factors(n, kappa, r, R, &at_r, at_R);
        } else {
            f = point_factors(n, kappa, r, R, nullptr, at_R);
        }
        double sum = 0.0;
        for (int m = 0; m < M; ++m) {
            if (coeffs.c[m] == 0.0) continue;
            const double alpha = coeffs.alpha[m];
            sum += coeffs.c[m] * combine(kappa, alpha, R, f, bracket[m], bessel_j(n, alpha * r));
        }
        out.values[i] = sum;
    }
    return out;
}

}  // namespace mbessel
