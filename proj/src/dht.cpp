#include "mbessel/dht.hpp"

#include <cmath>
#include <stdexcept>

namespace mbessel {

DhtPlan dht_plan(int n, int M, double R) {
    if (n < 0 || M < 4 || !(R > 0)) throw std::domain_error("dht_plan: requires n >= 0, M >= 4, R > 0");
    DhtPlan plan;
    plan.order = n;
    plan.size = M;
    plan.radius = R;
    plan.zeros = bessel_j_zeros(n, M + 1);

    const auto& x = plan.zeros.zeros;
    const double scale = x[M];
    plan.nodes.resize(M);
    plan.weights.resize(M);
    plan.inv_abs_jn1.resize(M);
    for (int m = 0; m < M; ++m) {
        plan.nodes[m] = x[m] / scale * R;
        const double j = bessel_j(n + 1, x[m]);
        plan.weights[m] = 1.0 / (j * j);
        plan.inv_abs_jn1[m] = 1.0 / std::fabs(j);
    }

    plan.matrix.assign(static_cast<std::size_t>(M) * M, 0.0);
    const double front = 2.0 / scale;
    for (int m = 0; m < M; ++m) {
        for (int j = m; j < M; ++j) {
            const double b = front * bessel_j(n, x[m] * x[j] / scale) * plan.inv_abs_jn1[m] * plan.inv_abs_jn1[j];
            plan.matrix[static_cast<std::size_t>(m) * M + j] = b;
            plan.matrix[static_cast<std::size_t>(j) * M + m] = b;
        }
    }
    return plan;
}

std::vector<double> dht_sandwich(const DhtPlan& plan, std::span<const double> x) {
    const int M = plan.size;
    if (x.size() != static_cast<std::size_t>(M)) throw std::invalid_argument("dht_sandwich: length mismatch");
    std::vector<double> y(M, 0.0);
    for (int m = 0; m < M; ++m) {
        const double* row = plan.matrix.data() + static_cast<std::size_t>(m) * M;
        double sum = 0.0;
        for (int j = 0; j < M; ++j) sum += row[j] * x[j];
        y[m] = sum;
    }
    return y;
}

HankelCoefficients dht_apply(const DhtPlan& plan, std::span<const double> samples) {
    const int M = plan.size;
    if (samples.size() != static_cast<std::size_t>(M)) throw std::invalid_argument("dht_apply: length mismatch");
    std::vector<double> g(M);
    for (int m = 0; m < M; ++m) g[m] = samples[m] * plan.inv_abs_jn1[m];
    const auto gh = dht_sandwich(plan, g);

    HankelCoefficients out;
    out.order = plan.order;
    out.radius = plan.radius;
    out.alpha.resize(M);
    out.c.resize(M);
    const double front = 2.0 / plan.scale_zero();
    for (int j = 0; j < M; ++j) {
        out.alpha[j] = plan.zeros.zeros[j] / plan.radius;
        out.c[j] = front * gh[j] * plan.inv_abs_jn1[j];
    }
    return out;
}

}  // namespace mbessel
