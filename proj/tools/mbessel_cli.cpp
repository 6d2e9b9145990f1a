#include "CLI11.hpp"

#include "mbessel/dht.hpp"
#include "mbessel/field_io.hpp"
#include "mbessel/harness.hpp"
#include "mbessel/interp.hpp"
#include "mbessel/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

using namespace mbessel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonFinite = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Field read_input(const std::string& path) {
    if (!std::filesystem::is_regular_file(path)) throw UsageError("input file not found: " + path);
    return read_field(path);
}

void require_finite(const std::vector<double>& v, const char* what) {
    if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }))
        throw NonFinite(std::string("non-finite values in ") + what);
}

// Writes to the named file, or to stdout for "" and "-".
template <class F>
void with_output(const std::string& path, F&& emit) {
    if (path.empty() || path == "-") {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    emit(out);
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

struct SolveOptions {
    int order = 0;
    double kappa = 16.0;
    double radius = 16.0;
    int dht_size = 128;
    int blocks = 0;
    int points_per_block = 16;
    double beta = 0.0;
    double alpha = 1.0;
    std::string input = "builtin";
    std::string output = "-";
};

int run_solve(const SolveOptions& o) {
    const auto plan = dht_plan(o.order, o.dht_size, o.radius);
    std::optional<BlockGrid> grid;
    if (o.blocks > 0) grid = block_grid(o.blocks, o.points_per_block, o.radius);
    const std::vector<double>& points = grid ? grid->nodes : plan.nodes;

    std::vector<double> forcing, exact;
    if (o.input == "builtin") {
        const TestCase tc(o.alpha, o.beta, sweep_exponent(o.order), o.order, o.kappa);
        for (double r : points) {
            forcing.push_back(test_forcing(tc, r));
            exact.push_back(test_solution(tc, r));
        }
    } else {
        auto field = read_input(o.input);
        if (field.dims[0] != points.size() || field.dims[1] != 1 || field.dims[2] != 1)
            throw UsageError("input field must have dims (" + std::to_string(points.size()) +
                             ", 1, 1) for the chosen radial grid");
        forcing = std::move(field.values);
    }

    const auto run = run_mode(o.order, o.kappa, plan, grid, forcing);
    require_finite(run.values, "solution");

    with_output(o.output, [&](std::ostream& out) {
        out.precision(17);
        out << (exact.empty() ? "r,u\n" : "r,u,u_exact\n");
        for (std::size_t i = 0; i < run.points.size(); ++i) {
            out << run.points[i] << ',' << run.values[i];
            if (!exact.empty()) out << ',' << exact[i];
            out << '\n';
        }
    });
    std::cerr << "mode " << (grid ? "chebyshev" : "dht-direct") << ", wall time " << run.wall_time_s << " s";
    if (!exact.empty()) std::cerr << ", epsilon " << linf_error(run.values, exact);
    std::cerr << '\n';
    return kExitOk;
}

struct SweepOptions {
    SweepConfig config;
    std::string output = "-";
};

int emit_rows(const std::vector<SweepResult>& rows, const std::string& output) {
    for (const auto& row : rows)
        if (!std::isfinite(row.epsilon) || !std::isfinite(row.wall_time_s) || !std::isfinite(row.plan_time_s))
            throw NonFinite("non-finite sweep result");
    with_output(output, [&](std::ostream& out) { write_csv(out, rows); });
    return kExitOk;
}

struct TimingOptions {
    TimingConfig config;
    std::string output = "-";
};

int run_timing_command(const TimingOptions& o) {
    const auto rows = run_timing(o.config);
    std::vector<double> m, t;
    for (const auto& row : rows)
        if (row.mode == SweepMode::dht_direct) {
            m.push_back(row.M);
            t.push_back(row.wall_time_s);
        }
    if (m.size() >= 2) std::cerr << "dht-direct time ~ M^" << fit_log_log(m, t).slope << '\n';
    for (int size : o.config.cheb_sizes) {
        std::vector<double> np, tc;
        for (const auto& row : rows)
            if (row.mode == SweepMode::chebyshev && row.M == size) {
                np.push_back(double(row.N) * row.P);
                tc.push_back(row.wall_time_s);
            }
        if (np.size() >= 2) std::cerr << "chebyshev M = " << size << ": time ~ (NP)^" << fit_log_log(np, tc).slope << '\n';
    }
    return emit_rows(rows, o.output);
}

struct PoissonCliOptions {
    int order = 2;
    int axial_mode = 1;
    double beta = 0.0;
    double alpha = 1.0;
    double radius = 16.0;
    int blocks = 16;
    int points_per_block = 16;
    int dht_size = 128;
    int n_theta = 0;
    int n_z = 0;
    double length_z = 2 * std::numbers::pi;
    int threads = 0;
    std::string input = "builtin";
    std::string output;
};

int run_poisson(PoissonCliOptions o) {
    std::vector<double> f, exact;
    std::optional<TestCase> tc;
    if (o.input == "builtin") {
        if (o.n_theta == 0) o.n_theta = 8;
        if (o.n_z == 0) o.n_z = 8;
        if (o.axial_mode == 0) throw UsageError("--axial-mode must be nonzero");
        tc.emplace(o.alpha, o.beta, sweep_exponent(o.order), o.order, axial_wavenumber(o.axial_mode, o.length_z));
    } else {
        auto field = read_input(o.input);
        if (o.n_theta == 0) o.n_theta = int(field.dims[1]);
        if (o.n_z == 0) o.n_z = int(field.dims[2]);
        if (field.dims[1] != std::uint32_t(o.n_theta) || field.dims[2] != std::uint32_t(o.n_z))
            throw UsageError("input field dims do not match --n-theta/--n-z");
        if (field.dims[0] != std::uint32_t(o.blocks * (o.points_per_block + 1)))
            throw UsageError("input radial dim must equal blocks * (points-per-block + 1)");
        f = std::move(field.values);
    }
    const CylGrid grid(block_grid(o.blocks, o.points_per_block, o.radius), o.n_theta, o.n_z, o.length_z);

    if (tc) {
        f.resize(grid.size());
        exact.resize(grid.size());
        for (int j = 0; j < grid.n_z; ++j)
            for (int t = 0; t < grid.n_theta; ++t) {
                const double angular = std::cos(o.order * grid.theta(t)) * std::cos(tc->kappa * grid.z(j));
                for (std::size_t i = 0; i < grid.n_radial(); ++i) {
                    const std::size_t idx = i + grid.n_radial() * (t + std::size_t(grid.n_theta) * j);
                    const double r = grid.radial.nodes[i];
                    f[idx] = test_forcing(*tc, r) * angular;
                    exact[idx] = test_solution(*tc, r) * angular;
                }
            }
    }

    PoissonOptions options;
    options.dht_size = o.dht_size;
    options.threads = o.threads;
    const auto result = solve_poisson(grid, f, options);
    require_finite(result.u, "solution");

    if (!o.output.empty()) {
        Field out;
        out.dims = {std::uint32_t(grid.n_radial()), std::uint32_t(grid.n_theta), std::uint32_t(grid.n_z)};
        out.values = result.u;
        write_field(o.output, out);
    }
    std::cerr << "imaginary residue " << result.imag_residue;
    if (!exact.empty()) std::cerr << ", epsilon " << linf_error(result.u, exact);
    std::cerr << '\n';
    return kExitOk;
}

void add_sweep_options(CLI::App& cmd, SweepOptions& o, bool chebyshev) {
    auto& c = o.config;
    cmd.add_option("--orders", c.orders, "Bessel orders n")->delimiter(',')->check(CLI::Range(0, 512))->capture_default_str();
    cmd.add_option("--kappas", c.kappas, "Wavenumbers kappa")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--betas", c.betas, "Oscillation frequencies beta")->delimiter(',')->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd.add_option("--dht-sizes", c.dht_sizes, "Transform sizes M")->delimiter(',')->check(CLI::Range(4, 1 << 14))->capture_default_str();
    if (chebyshev) {
        cmd.add_option("--blocks", c.block_counts, "Block counts N")->delimiter(',')->check(CLI::Range(1, 1 << 14))->capture_default_str();
        cmd.add_option("--points-per-block", c.points_per_block, "Chebyshev order P")->check(CLI::Range(1, 256))->capture_default_str();
    }
    cmd.add_option("--alpha", c.alpha, "Gaussian width")->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--radius", c.radius, "Outer radius R")->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--threads", c.threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd.add_option("--output", o.output, "CSV file, - for stdout")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modified Bessel mode solver and cylindrical Poisson driver"};
    app.require_subcommand(1);

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one (n, kappa) mode");
    solve_cmd->add_option("--order", solve.order, "Bessel order n")->check(CLI::Range(0, 512))->capture_default_str();
    solve_cmd->add_option("--kappa", solve.kappa, "Wavenumber kappa")->check(CLI::PositiveNumber)->capture_default_str();
    solve_cmd->add_option("--radius", solve.radius, "Outer radius R")->check(CLI::PositiveNumber)->capture_default_str();
    solve_cmd->add_option("--dht-size", solve.dht_size, "Transform size M")->check(CLI::Range(4, 1 << 14))->capture_default_str();
    solve_cmd->add_option("--blocks", solve.blocks, "Chebyshev blocks N, 0 samples on transform nodes")
        ->check(CLI::Range(0, 1 << 14))
        ->capture_default_str();
    solve_cmd->add_option("--points-per-block", solve.points_per_block, "Chebyshev order P")->check(CLI::Range(1, 256))->capture_default_str();
    solve_cmd->add_option("--beta", solve.beta, "Test-function frequency")->check(CLI::NonNegativeNumber)->capture_default_str();
    solve_cmd->add_option("--alpha", solve.alpha, "Test-function width")->check(CLI::PositiveNumber)->capture_default_str();
    solve_cmd->add_option("--input", solve.input, "Forcing field file, or builtin")->capture_default_str();
    solve_cmd->add_option("--output", solve.output, "CSV file, - for stdout")->capture_default_str();

    SweepOptions dht_sweep{dht_sweep_defaults()};
    add_sweep_options(*app.add_subcommand("sweep-dht", "Error sweep on transform nodes"), dht_sweep, false);
    SweepOptions cheb_sweep{cheb_sweep_defaults()};
    add_sweep_options(*app.add_subcommand("sweep-cheb", "Error sweep on Chebyshev blocks"), cheb_sweep, true);

    TimingOptions timing;
    auto* timing_cmd = app.add_subcommand("timing", "Wall-time scaling study");
    auto& tc = timing.config;
    timing_cmd->add_option("--order", tc.n, "Bessel order n")->check(CLI::Range(0, 512))->capture_default_str();
    timing_cmd->add_option("--kappa", tc.kappa, "Wavenumber kappa")->check(CLI::PositiveNumber)->capture_default_str();
    timing_cmd->add_option("--beta", tc.beta, "Test-function frequency")->check(CLI::NonNegativeNumber)->capture_default_str();
    timing_cmd->add_option("--dht-sizes", tc.dht_sizes, "Sizes M for transform-node timing")->delimiter(',')->check(CLI::Range(4, 1 << 14))->capture_default_str();
    timing_cmd->add_option("--cheb-sizes", tc.cheb_sizes, "Sizes M for Chebyshev timing")->delimiter(',')->check(CLI::Range(4, 1 << 14))->capture_default_str();
    timing_cmd->add_option("--blocks", tc.block_counts, "Block counts N")->delimiter(',')->check(CLI::Range(1, 1 << 14))->capture_default_str();
    timing_cmd->add_option("--points-per-block", tc.points_per_block, "Chebyshev order P")->check(CLI::Range(1, 256))->capture_default_str();
    timing_cmd->add_option("--repeats", tc.repeats, "Runs per point, fastest kept")->check(CLI::Range(1, 100))->capture_default_str();
    timing_cmd->add_option("--output", timing.output, "CSV file, - for stdout")->capture_default_str();

    PoissonCliOptions poisson;
    auto* poisson_cmd = app.add_subcommand("poisson", "Solve the 3-d Poisson problem on a cylinder");
    poisson_cmd->add_option("--input", poisson.input, "CYLF forcing file, or builtin single mode")->capture_default_str();
    poisson_cmd->add_option("--output", poisson.output, "CYLF solution file");
    poisson_cmd->add_option("--radius", poisson.radius, "Outer radius R")->check(CLI::PositiveNumber)->capture_default_str();
    poisson_cmd->add_option("--blocks", poisson.blocks, "Radial blocks N")->check(CLI::Range(1, 1 << 14))->capture_default_str();
    poisson_cmd->add_option("--points-per-block", poisson.points_per_block, "Chebyshev order P")->check(CLI::Range(1, 256))->capture_default_str();
    poisson_cmd->add_option("--dht-size", poisson.dht_size, "Transform size M")->check(CLI::Range(4, 1 << 14))->capture_default_str();
    poisson_cmd->add_option("--n-theta", poisson.n_theta, "Azimuthal samples (even), default from input")->check(CLI::Range(0, 1 << 12));
    poisson_cmd->add_option("--n-z", poisson.n_z, "Axial samples (even), default from input")->check(CLI::Range(0, 1 << 12));
    poisson_cmd->add_option("--length-z", poisson.length_z, "Axial period")->check(CLI::PositiveNumber)->capture_default_str();
    poisson_cmd->add_option("--threads", poisson.threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber)->capture_default_str();
    poisson_cmd->add_option("--order", poisson.order, "Builtin mode azimuthal order")->check(CLI::Range(0, 512))->capture_default_str();
    poisson_cmd->add_option("--axial-mode", poisson.axial_mode, "Builtin mode axial index k")->capture_default_str();
    poisson_cmd->add_option("--beta", poisson.beta, "Builtin test-function frequency")->check(CLI::NonNegativeNumber)->capture_default_str();
    poisson_cmd->add_option("--alpha", poisson.alpha, "Builtin test-function width")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (app.got_subcommand("sweep-dht")) return emit_rows(run_sweep(dht_sweep.config), dht_sweep.output);
        if (app.got_subcommand("sweep-cheb")) {
            if (cheb_sweep.config.block_counts.empty()) throw UsageError("--blocks must not be empty");
            return emit_rows(run_sweep(cheb_sweep.config), cheb_sweep.output);
        }
        if (*timing_cmd) return run_timing_command(timing);
        if (*poisson_cmd) return run_poisson(poisson);
    } catch (const NonFinite& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonFinite;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const FieldFormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
