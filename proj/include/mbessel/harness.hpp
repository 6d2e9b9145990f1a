#pragma once

#include "mbessel/dht.hpp"
#include "mbessel/interp.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace mbessel {

/// u(r) = (r/r_max)^m exp(-(r^2 - r_max^2)/alpha^2) cos(beta r), r_max = alpha sqrt(m/2),
/// posed as the order-n mode at axial wavenumber kappa.
struct TestCase {
    double alpha = 1.0;
    double beta = 0.0;
    int m = 2;
    int n = 0;
    double kappa = 1.0;

    /// Validates alpha > 0, beta >= 0, m >= max(n, 1), kappa >= 0.
    TestCase(double alpha, double beta, int m, int n, double kappa);

    [[nodiscard]] double r_max() const;
};

/// The exponent used by the sweeps: m = n, raised to 2 for n < 2.
int sweep_exponent(int n);

double test_solution(const TestCase& tc, double r);
/// f = u'' + u'/r - (n^2/r^2 + kappa^2) u in closed form. At r = 0 the limit is used;
/// it diverges (domain_error) only for m = 1, n = 0.
double test_forcing(const TestCase& tc, double r);

/// max|computed - exact| / max|exact|, clamped to [0, 1]; non-finite data gives 1.
double linf_error(std::span<const double> computed, std::span<const double> exact);

enum class SweepMode { dht_direct, chebyshev };
std::string to_string(SweepMode mode);

/// Plans keyed by (n, M, R), built once and shared. Safe to use from several threads.
class PlanCache {
public:
    struct Entry {
        std::shared_ptr<const DhtPlan> plan;
        double build_time_s = 0.0;
    };
    Entry get(int n, int M, double R);

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, double>, Entry> plans_;
};

/// One mode solve following the four-step algorithm: plan, optional interpolation from a
/// block grid, transform, evaluation. Forcing samples sit on plan.nodes when grid is
/// empty, otherwise on grid->nodes, and the solution is returned at the same points.
struct ModeRun {
    std::vector<double> points;
    std::vector<double> values;
    double wall_time_s = 0.0;  // transform + evaluation
};
ModeRun run_mode(int n, double kappa, const DhtPlan& plan, const std::optional<BlockGrid>& grid,
                 std::span<const double> forcing);

struct SweepResult {
    SweepMode mode = SweepMode::dht_direct;
    int n = 0;
    double kappa = 0.0;
    double beta = 0.0;
    int M = 0;
    int N = 0;  // 0 in dht-direct mode
    int P = 0;
    double epsilon = 1.0;
    double wall_time_s = 0.0;
    double plan_time_s = 0.0;
};

struct SweepCase {
    SweepMode mode = SweepMode::dht_direct;
    int n = 0;
    double kappa = 16.0;
    double beta = 0.0;
    int M = 64;
    int N = 0;
    int P = 16;
    double alpha = 1.0;
    double radius = 16.0;
};

/// Runs one case against the test function; any failure is reported as epsilon = 1.
SweepResult run_case(const SweepCase& c, PlanCache& cache);

struct SweepConfig {
    SweepMode mode = SweepMode::dht_direct;
    std::vector<int> orders{0, 16, 32, 64};
    std::vector<double> kappas{16.0, 1024.0};
    std::vector<double> betas{0.0, 8.0, 16.0};
    std::vector<int> dht_sizes{8, 16, 32, 48, 64, 96, 128, 192, 256};
    std::vector<int> block_counts{};  // chebyshev only
    int points_per_block = 16;
    double alpha = 1.0;
    double radius = 16.0;
    int threads = 0;  // 0 picks the hardware concurrency
};

/// Node-convergence grid (dht-direct) and Chebyshev grid defaults.
SweepConfig dht_sweep_defaults();
SweepConfig cheb_sweep_defaults();

/// Every combination of the config, ordered by (mode, n, kappa, beta, M, N, P).
std::vector<SweepResult> run_sweep(const SweepConfig& config);

struct TimingConfig {
    int n = 64;
    double kappa = 1024.0;
    double beta = 16.0;
    double alpha = 1.0;
    double radius = 16.0;
    std::vector<int> dht_sizes{64, 128, 256, 512, 1024};
    std::vector<int> cheb_sizes{64, 128, 256};
    std::vector<int> block_counts{8, 16, 32, 64, 128};
    int points_per_block = 16;
    int repeats = 3;  // the minimum wall time over repeats is kept
};

/// Serial timing runs: dht-direct over dht_sizes, then chebyshev over cheb_sizes x block_counts.
std::vector<SweepResult> run_timing(const TimingConfig& config);

/// Least-squares slope and intercept of log(y) against log(x).
struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LogFit fit_log_log(std::span<const double> x, std::span<const double> y);

inline constexpr const char* kCsvHeader = "mode,n,kappa,beta,M,N,P,epsilon,wall_time_s,plan_time_s";
void write_csv(std::ostream& out, std::span<const SweepResult> rows);

}  // namespace mbessel
