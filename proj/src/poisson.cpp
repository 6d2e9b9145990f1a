#include "mbessel/poisson.hpp"

#include "mbessel/dht.hpp"
#include "mbessel/greens.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace mbessel {
namespace {

using cplx = std::complex<double>;

// e^{sign 2 pi i p / N} for p = 0..N-1, with the index reduced exactly before the cosine
std::vector<cplx> roots_of_unity(int N, int sign) {
    std::vector<cplx> w(N);
    for (int p = 0; p < N; ++p) {
        const double a = 2.0 * std::numbers::pi * p / N;
        w[p] = {std::cos(a), sign * std::sin(a)};
    }
    return w;
}

int wrap(long long v, int N) { return static_cast<int>(((v % N) + N) % N); }

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace

CylGrid::CylGrid(BlockGrid radial_, int n_theta_, int n_z_, double length_z_)
    : radial(std::move(radial_)), n_theta(n_theta_), n_z(n_z_), length_z(length_z_) {
    if (n_theta < 4 || n_theta % 2) throw std::domain_error("CylGrid: n_theta must be even and >= 4");
    if (n_z < 4 || n_z % 2) throw std::domain_error("CylGrid: n_z must be even and >= 4");
    if (!(length_z > 0.0)) throw std::domain_error("CylGrid: length_z must be positive");
}

double CylGrid::theta(int t) const { return 2.0 * std::numbers::pi * t / n_theta; }
double CylGrid::z(int j) const { return length_z * j / n_z; }

double axial_wavenumber(int k, double length_z) { return 2.0 * std::numbers::pi * std::abs(k) / length_z; }

std::size_t ModeSet::index(int n, int k) const {
    if (n < -n_theta / 2 || n >= n_theta / 2 || k < -n_z / 2 || k >= n_z / 2)
        throw std::out_of_range("ModeSet: mode index out of range");
    return static_cast<std::size_t>(n + n_theta / 2) * n_z + static_cast<std::size_t>(k + n_z / 2);
}

ModeSet decompose(const CylGrid& grid, std::span<const double> f) {
    if (f.size() != grid.size()) throw std::invalid_argument("decompose: field size does not match the grid");
    const std::size_t nr = grid.n_radial();
    const int nt = grid.n_theta, nz = grid.n_z;
    const auto wt = roots_of_unity(nt, -1);
    const auto wz = roots_of_unity(nz, -1);

    // z transform first: partial[(i, t, k)]
    std::vector<cplx> partial(nr * nt * nz);
    for (int k = -nz / 2; k < nz / 2; ++k) {
        for (int t = 0; t < nt; ++t) {
            cplx* out = partial.data() + (static_cast<std::size_t>(k + nz / 2) * nt + t) * nr;
            for (int j = 0; j < nz; ++j) {
                const cplx w = wz[wrap(static_cast<long long>(k) * j, nz)];
                const double* in = f.data() + (static_cast<std::size_t>(j) * nt + t) * nr;
                for (std::size_t i = 0; i < nr; ++i) out[i] += w * in[i];
            }
        }
    }

    ModeSet modes{nt, nz, nr, std::vector<cplx>(nr * nt * nz)};
    const double scale = 1.0 / (static_cast<double>(nt) * nz);
    for (int n = -nt / 2; n < nt / 2; ++n) {
        for (int k = -nz / 2; k < nz / 2; ++k) {
            cplx* out = modes.radial(n, k);
            for (int t = 0; t < nt; ++t) {
                const cplx w = wt[wrap(static_cast<long long>(n) * t, nt)];
                const cplx* in = partial.data() + (static_cast<std::size_t>(k + nz / 2) * nt + t) * nr;
                for (std::size_t i = 0; i < nr; ++i) out[i] += w * in[i];
            }
            for (std::size_t i = 0; i < nr; ++i) out[i] *= scale;
        }
    }
    return modes;
}

std::vector<cplx> resynthesize(const CylGrid& grid, const ModeSet& modes) {
    const std::size_t nr = grid.n_radial();
    const int nt = grid.n_theta, nz = grid.n_z;
    if (modes.n_theta != nt || modes.n_z != nz || modes.n_radial != nr)
        throw std::invalid_argument("resynthesize: mode set does not match the grid");
    const auto wt = roots_of_unity(nt, +1);
    const auto wz = roots_of_unity(nz, +1);

    // theta synthesis first: partial[(i, t, k)]
    std::vector<cplx> partial(nr * nt * nz);
    for (int k = -nz / 2; k < nz / 2; ++k) {
        for (int t = 0; t < nt; ++t) {
            cplx* out = partial.data() + (static_cast<std::size_t>(k + nz / 2) * nt + t) * nr;
            for (int n = -nt / 2; n < nt / 2; ++n) {
                const cplx w = wt[wrap(static_cast<long long>(n) * t, nt)];
                const cplx* in = modes.radial(n, k);
                for (std::size_t i = 0; i < nr; ++i) out[i] += w * in[i];
            }
        }
    }

    std::vector<cplx> field(nr * nt * nz);
    for (int j = 0; j < nz; ++j) {
        for (int t = 0; t < nt; ++t) {
            cplx* out = field.data() + (static_cast<std::size_t>(j) * nt + t) * nr;
            for (int k = -nz / 2; k < nz / 2; ++k) {
                const cplx w = wz[wrap(static_cast<long long>(k) * j, nz)];
                const cplx* in = partial.data() + (static_cast<std::size_t>(k + nz / 2) * nt + t) * nr;
                for (std::size_t i = 0; i < nr; ++i) out[i] += w * in[i];
            }
        }
    }
    return field;
}

PoissonResult solve_poisson(const CylGrid& grid, std::span<const double> f, const PoissonOptions& options) {
    const ModeSet in = decompose(grid, f);
    const std::size_t nr = grid.n_radial();
    const int nt = grid.n_theta, nz = grid.n_z;
    const double R = grid.radial.radius();

    const double f_norm = max_abs(f);
    for (int n = -nt / 2; n < nt / 2; ++n) {
        const cplx* mode = in.radial(n, 0);
        for (std::size_t i = 0; i < nr; ++i) {
            if (std::abs(mode[i]) > options.mean_mode_tolerance * f_norm)
                throw std::domain_error("solve_poisson: forcing has content at kappa = 0");
        }
    }

    // modes with k = 0 stay zero; the others are solved independently
    struct Task {
        int n, k;
    };
    std::vector<Task> tasks;
    for (int n = -nt / 2; n < nt / 2; ++n)
        for (int k = -nz / 2; k < nz / 2; ++k) tasks.push_back({n, k});
    std::vector<std::size_t> order = options.schedule;
    if (order.empty()) {
        for (std::size_t i = 0; i < tasks.size(); ++i) order.push_back(i);
    } else {
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i || sorted.size() != tasks.size())
                throw std::invalid_argument("solve_poisson: schedule is not a permutation of the modes");
    }

    std::map<int, DhtPlan> plans;
    for (int n = 0; n <= nt / 2; ++n) plans.emplace(n, dht_plan(n, options.dht_size, R));

    ModeSet out{nt, nz, nr, std::vector<cplx>(in.data.size())};
    const auto& nodes = grid.radial.nodes;
    auto solve_task = [&](const Task& task) {
        if (task.k == 0) return;
        const cplx* src = in.radial(task.n, task.k);
        if (std::all_of(src, src + nr, [](const cplx& v) { return v == cplx{}; })) return;
        const int order_n = std::abs(task.n);
        const double kappa = axial_wavenumber(task.k, grid.length_z);
        const DhtPlan& plan = plans.at(order_n);
        std::vector<double> re(nr), im(nr);
        for (std::size_t i = 0; i < nr; ++i) {
            re[i] = src[i].real();
            im[i] = src[i].imag();
        }
        const auto u_re = solve_mode(order_n, kappa, plan, dht_apply(plan, interpolate(grid.radial, re, plan.nodes)), nodes);
        const auto u_im = solve_mode(order_n, kappa, plan, dht_apply(plan, interpolate(grid.radial, im, plan.nodes)), nodes);
        cplx* dst = out.radial(task.n, task.k);
        for (std::size_t i = 0; i < nr; ++i) dst[i] = {u_re.values[i], u_im.values[i]};
    };

    int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(tasks.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < order.size(); i = next++) {
            try {
                solve_task(tasks[order[i]]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    const auto field = resynthesize(grid, out);
    PoissonResult result;
    result.u.resize(field.size());
    double re_max = 0.0, im_max = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        result.u[i] = field[i].real();
        re_max = std::max(re_max, std::fabs(field[i].real()));
        im_max = std::max(im_max, std::fabs(field[i].imag()));
    }
    result.imag_residue = re_max > 0.0 ? im_max / re_max : im_max;
    return result;
}

}  // namespace mbessel
