#include "mbessel/harness.hpp"

#include "mbessel/greens.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace mbessel {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

TestCase::TestCase(double alpha_, double beta_, int m_, int n_, double kappa_)
    : alpha(alpha_), beta(beta_), m(m_), n(n_), kappa(kappa_) {
    if (!(alpha > 0.0)) throw std::domain_error("TestCase: alpha must be positive");
    if (!(beta >= 0.0)) throw std::domain_error("TestCase: beta must be non-negative");
    if (n < 0 || m < n || m < 1) throw std::domain_error("TestCase: requires m >= n and m >= 1");
    if (!(kappa >= 0.0)) throw std::domain_error("TestCase: kappa must be non-negative");
}

double TestCase::r_max() const { return alpha * std::sqrt(m / 2.0); }

int sweep_exponent(int n) { return std::max(n, 2); }

double test_solution(const TestCase& tc, double r) {
    if (!(r >= 0.0)) throw std::domain_error("test_solution: r must be non-negative");
    const double rm = tc.r_max();
    const double a2 = tc.alpha * tc.alpha;
    return std::pow(r / rm, tc.m) * std::exp(-(r * r - rm * rm) / a2) * std::cos(tc.beta * r);
}

double test_forcing(const TestCase& tc, double r) {
    if (!(r >= 0.0)) throw std::domain_error("test_forcing: r must be non-negative");
    const double rm = tc.r_max();
    const double a2 = tc.alpha * tc.alpha;
    const double e = std::exp(-(r * r - rm * rm) / a2);
    const int m = tc.m, n = tc.n;
    if (r == 0.0) {
        // only the (m^2 - n^2) g / r^2 term can survive
        if (m == 2) return (4.0 - n * n) * e / (rm * rm);
        if (m >= 3 || m == n) return 0.0;
        throw std::domain_error("test_forcing: no finite limit at r = 0 for m = 1, n = 0");
    }
    const double g = std::pow(r / rm, m) * e;
    // g/r and g/r^2 without forming 0/0 near the axis
    const double g_r = std::pow(r / rm, m - 1) * e / rm;
    const double g_r2 = m >= 2 ? std::pow(r / rm, m - 2) * e / (rm * rm) : g_r / r;
    const double b = tc.beta;
    const double c = std::cos(b * r), s = std::sin(b * r);
    const double poly = -4.0 * (m + 1) / a2 + 4.0 * r * r / (a2 * a2) - b * b - tc.kappa * tc.kappa;
    return (static_cast<double>(m * m - n * n) * g_r2 + poly * g) * c -
           b * ((2.0 * m + 1) * g_r - 4.0 * r / a2 * g) * s;
}

double linf_error(std::span<const double> computed, std::span<const double> exact) {
    if (computed.size() != exact.size()) throw std::invalid_argument("linf_error: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const double d = std::fabs(computed[i] - exact[i]);
        if (!std::isfinite(d)) return 1.0;
        num = std::max(num, d);
        den = std::max(den, std::fabs(exact[i]));
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : 1.0;
    return std::min(1.0, num / den);
}

std::string to_string(SweepMode mode) { return mode == SweepMode::dht_direct ? "dht-direct" : "chebyshev"; }

PlanCache::Entry PlanCache::get(int n, int M, double R) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, M, R);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto start = Clock::now();
    auto plan = std::make_shared<const DhtPlan>(dht_plan(n, M, R));
    Entry entry{std::move(plan), seconds_since(start)};
    plans_.emplace(key, entry);
    return entry;
}

ModeRun run_mode(int n, double kappa, const DhtPlan& plan, const std::optional<BlockGrid>& grid,
                 std::span<const double> forcing) {
    ModeRun run;
    std::vector<double> on_nodes;
    if (grid) {
        if (forcing.size() != grid->size()) throw std::invalid_argument("run_mode: forcing does not match the grid");
        on_nodes = interpolate(*grid, forcing, plan.nodes);
        run.points = grid->nodes;
    } else {
        if (forcing.size() != plan.nodes.size())
            throw std::invalid_argument("run_mode: forcing does not match the plan");
        on_nodes.assign(forcing.begin(), forcing.end());
        run.points = plan.nodes;
    }
    const auto start = Clock::now();
    const auto coeffs = dht_apply(plan, on_nodes);
    auto solution = solve_mode(n, kappa, plan, coeffs, run.points);
    run.wall_time_s = seconds_since(start);
    run.values = std::move(solution.values);
    return run;
}

SweepResult run_case(const SweepCase& c, PlanCache& cache) {
    SweepResult res;
    res.mode = c.mode;
    res.n = c.n;
    res.kappa = c.kappa;
    res.beta = c.beta;
    res.M = c.M;
    res.N = c.mode == SweepMode::chebyshev ? c.N : 0;
    res.P = c.mode == SweepMode::chebyshev ? c.P : 0;
    try {
        const TestCase tc(c.alpha, c.beta, sweep_exponent(c.n), c.n, c.kappa);
        const auto entry = cache.get(c.n, c.M, c.radius);
        std::optional<BlockGrid> grid;
        if (c.mode == SweepMode::chebyshev) grid = block_grid(c.N, c.P, c.radius);
        const auto& points = grid ? grid->nodes : entry.plan->nodes;
        std::vector<double> forcing(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) forcing[i] = test_forcing(tc, points[i]);

        const auto run = run_mode(c.n, c.kappa, *entry.plan, grid, forcing);
        std::vector<double> exact(run.points.size());
        for (std::size_t i = 0; i < exact.size(); ++i) exact[i] = test_solution(tc, run.points[i]);
        res.epsilon = linf_error(run.values, exact);
        res.wall_time_s = run.wall_time_s;
        res.plan_time_s = entry.build_time_s;
    } catch (const std::exception&) {
        res.epsilon = 1.0;
    }
    return res;
}

SweepConfig dht_sweep_defaults() { return SweepConfig{}; }

SweepConfig cheb_sweep_defaults() {
    SweepConfig config;
    config.mode = SweepMode::chebyshev;
    config.orders = {0, 16, 32, 64};
    config.kappas = {1024.0};
    config.dht_sizes = {128, 256};
    config.block_counts = {4, 8, 16, 24, 32, 48, 64, 96, 128};
    return config;
}

std::vector<SweepResult> run_sweep(const SweepConfig& config) {
    std::vector<SweepCase> cases;
    const bool cheb = config.mode == SweepMode::chebyshev;
    const std::vector<int> blocks = cheb ? config.block_counts : std::vector<int>{0};
    for (int n : config.orders)
        for (double kappa : config.kappas)
            for (double beta : config.betas)
                for (int M : config.dht_sizes)
                    for (int N : blocks)
                        cases.push_back({config.mode, n, kappa, beta, M, N, config.points_per_block, config.alpha,
                                         config.radius});
    std::sort(cases.begin(), cases.end(), [](const SweepCase& a, const SweepCase& b) {
        return std::tie(a.n, a.kappa, a.beta, a.M, a.N) < std::tie(b.n, b.kappa, b.beta, b.M, b.N);
    });

    std::vector<SweepResult> results(cases.size());
    PlanCache cache;
    int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, std::max<int>(1, static_cast<int>(cases.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) results[i] = run_case(cases[i], cache);
    };
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return results;
}

std::vector<SweepResult> run_timing(const TimingConfig& config) {
    PlanCache cache;
    auto timed = [&](SweepCase c) {
        SweepResult best = run_case(c, cache);
        for (int rep = 1; rep < config.repeats; ++rep)
            best.wall_time_s = std::min(best.wall_time_s, run_case(c, cache).wall_time_s);
        return best;
    };
    std::vector<SweepResult> rows;
    for (int M : config.dht_sizes)
        rows.push_back(timed({SweepMode::dht_direct, config.n, config.kappa, config.beta, M, 0,
                              config.points_per_block, config.alpha, config.radius}));
    for (int M : config.cheb_sizes)
        for (int N : config.block_counts)
            rows.push_back(timed({SweepMode::chebyshev, config.n, config.kappa, config.beta, M, N,
                                  config.points_per_block, config.alpha, config.radius}));
    return rows;
}

LogFit fit_log_log(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_log_log: need matching samples");
    const double count = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    LogFit fit;
    fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / count;
    return fit;
}

void write_csv(std::ostream& out, std::span<const SweepResult> rows) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out.unsetf(std::ios::floatfield);
        out.precision(10);
        out << to_string(r.mode) << ',' << r.n << ',' << r.kappa << ',' << r.beta << ',' << r.M << ',' << r.N << ','
            << r.P << ',';
        out.setf(std::ios::scientific, std::ios::floatfield);
        out.precision(6);
        out << r.epsilon << ',' << r.wall_time_s << ',' << r.plan_time_s << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

}  // namespace mbessel
