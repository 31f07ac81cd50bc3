#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vollab/common.hpp"

namespace vollab {

/// Row-major so each simulated path occupies contiguous memory.
using PathMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Shared Monte Carlo controls. dt = horizon_T / n_steps.
struct SimulationConfig {
    std::size_t n_paths = 10000;
    std::size_t n_steps = 100;
    double horizon_T = 1.0;        // years
    std::uint64_t seed = 0;
    double risk_free_rate = 0.0427;

    double dt() const { return horizon_T / static_cast<double>(n_steps); }

    void validate() const;
};

struct GbmParams {
    double sigma = 0.0;  // annualized volatility

    void validate() const;
};

struct MertonJumpParams {
    double sigma = 0.0;     // annualized diffusion volatility
    double lambda_j = 0.0;  // jump intensity, expected jumps/year
    double mu_j = 0.0;      // mean of log jump size
    double sigma_j = 0.0;   // std of log jump size
    bool compensated = true;

    /// Drift correction restoring the discounted-price martingale:
    /// lambda_j * (exp(mu_j + sigma_j^2/2) - 1), or 0 when uncompensated.
    double compensator() const;

    void validate() const;
};

struct HestonParams {
    double kappa = 0.0;    // mean-reversion speed, 1/year
    double theta = 0.0;    // long-run variance
    double sigma_v = 0.0;  // vol-of-vol
    double rho = 0.0;      // correlation in [-1, 1]
    double v0 = 0.0;       // initial variance

    void validate() const;
};

/// Simulated asset-price grid, n_paths x (n_steps + 1); column 0 equals S0.
struct PathGrid {
    PathMatrix values;
    SimulationConfig config;

    Eigen::Index n_paths() const { return values.rows(); }
    /// Terminal prices S_T (last column).
    Eigen::VectorXd terminal() const { return values.col(values.cols() - 1); }
};

/// Simulated variance grid accompanying a Heston PathGrid; entries >= 0.
struct VarianceGrid {
    PathMatrix values;
};

/// rho * z1 + sqrt(1 - rho^2) * z_tilde. Throws DomainError when |rho| > 1.
double correlate(double z1, double z_tilde, double rho);

/// Geometric Brownian motion under the risk-neutral drift r.
/// Deterministic for fixed (seed, n_paths, n_steps), any worker count.
PathGrid simulate_gbm(double S0, const GbmParams& params, const SimulationConfig& config,
                      unsigned n_threads = 0);

/// Jump diffusion: per step draw n_j ~ Poisson(lambda_j*dt) log-jumps
/// Y_k ~ N(mu_j, sigma_j^2) applied at step end, aggregated in log space.
PathGrid simulate_merton(double S0, const MertonJumpParams& params, const SimulationConfig& config,
                         unsigned n_threads = 0);

/// Log-Euler price step with stochastic variance, full-truncation Euler
/// variance step. The carried variance state may go negative; the stored
/// grid is truncated at zero.
std::pair<PathGrid, VarianceGrid> simulate_heston(double S0, const HestonParams& params,
                                                  const SimulationConfig& config,
                                                  unsigned n_threads = 0);

/// Expected variance path theta + (v0 - theta) * exp(-kappa * t).
double heston_mean_variance(double kappa, double theta, double v0, double t);

std::vector<double> heston_mean_variance_path(const HestonParams& params, double v0,
                                              const std::vector<double>& times);

/// Writes `path,step0,...,stepN` CSV, one row per path, full precision.
void dump_grid_csv(const PathGrid& grid, const std::filesystem::path& path);

}  // namespace vollab
