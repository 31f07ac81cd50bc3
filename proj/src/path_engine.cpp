#include "vollab/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>

#include "vollab/rng.hpp"

namespace vollab {

namespace {

/// Runs fn(path_begin, path_end) over disjoint blocks. Safe because every
/// path writes only its own row and draws only from its own substreams.
void parallel_over_paths(std::size_t n_paths, unsigned n_threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    unsigned workers = n_threads != 0 ? n_threads : std::thread::hardware_concurrency();
    if (workers <= 1 || n_paths < 2 * workers) {
        fn(0, n_paths);
        return;
    }
    workers = std::min<std::size_t>(workers, n_paths);
    const std::size_t block = (n_paths + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * block;
        const std::size_t hi = std::min(n_paths, lo + block);
        if (lo >= hi) break;
        threads.emplace_back(fn, lo, hi);
    }
    for (auto& t : threads) t.join();
}

}  // namespace

void SimulationConfig::validate() const {
    if (n_paths < 1) throw DomainError("n_paths must be >= 1");
    if (n_steps < 1) throw DomainError("n_steps must be >= 1");
    if (!(horizon_T > 0.0)) throw DomainError("horizon_T must be > 0");
    if (!(dt() > 0.0)) throw DomainError("dt must be > 0");
}

void GbmParams::validate() const {
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
}

double MertonJumpParams::compensator() const {
    if (!compensated) return 0.0;
    return lambda_j * (std::exp(mu_j + 0.5 * sigma_j * sigma_j) - 1.0);
}

void MertonJumpParams::validate() const {
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    if (!(lambda_j >= 0.0)) throw DomainError("lambda_j must be >= 0");
    if (!(sigma_j >= 0.0)) throw DomainError("sigma_j must be >= 0");
}

void HestonParams::validate() const {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be >= 0");
    if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
    if (!(sigma_v >= 0.0)) throw DomainError("sigma_v must be >= 0");
    if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("rho must lie in [-1, 1]");
    if (!(v0 >= 0.0)) throw DomainError("v0 must be >= 0");
}

double correlate(double z1, double z_tilde, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw DomainError("correlation must lie in [-1, 1]");
    }
    return rho * z1 + std::sqrt(1.0 - rho * rho) * z_tilde;
}

// The three schemes share one log-increment form,
//   (r - v/2 - c) * dt + sqrt(v * dt) * z + jump_sum,
// evaluated with identical floating-point operations so that
// Heston(sigma_v=0, v0=theta=sigma^2), GBM(sigma) and Merton(lambda_j=0)
// produce bitwise-identical grids on shared substreams.

PathGrid simulate_gbm(double S0, const GbmParams& params, const SimulationConfig& config,
                      unsigned n_threads) {
    if (!(S0 > 0.0)) throw DomainError("S0 must be > 0");
    params.validate();
    config.validate();

    PathGrid grid;
    grid.config = config;
    grid.values.resize(static_cast<Eigen::Index>(config.n_paths),
                       static_cast<Eigen::Index>(config.n_steps + 1));

    const double dt = config.dt();
    const double r = config.risk_free_rate;
    const double variance = params.sigma * params.sigma;

    parallel_over_paths(config.n_paths, n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            double s = S0;
            grid.values(p, 0) = s;
            for (std::size_t t = 0; t < config.n_steps; ++t) {
                const double z = rng::cell_normal(config.seed, static_cast<std::uint32_t>(p),
                                                  static_cast<std::uint32_t>(t),
                                                  rng::Stream::diffusion);
                s *= std::exp((r - 0.5 * variance - 0.0) * dt + std::sqrt(variance * dt) * z + 0.0);
                grid.values(p, t + 1) = s;
            }
        }
    });
    return grid;
}

PathGrid simulate_merton(double S0, const MertonJumpParams& params, const SimulationConfig& config,
                         unsigned n_threads) {
    if (!(S0 > 0.0)) throw DomainError("S0 must be > 0");
    params.validate();
    config.validate();

    PathGrid grid;
    grid.config = config;
    grid.values.resize(static_cast<Eigen::Index>(config.n_paths),
                       static_cast<Eigen::Index>(config.n_steps + 1));

    const double dt = config.dt();
    const double r = config.risk_free_rate;
    const double variance = params.sigma * params.sigma;
    const double comp = params.compensator();
    const double jump_mean = params.lambda_j * dt;

    parallel_over_paths(config.n_paths, n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            const auto path = static_cast<std::uint32_t>(p);
            double s = S0;
            grid.values(p, 0) = s;
            for (std::size_t t = 0; t < config.n_steps; ++t) {
                const auto step = static_cast<std::uint32_t>(t);
                const double z = rng::cell_normal(config.seed, path, step, rng::Stream::diffusion);

                double jump_sum = 0.0;
                if (params.lambda_j > 0.0) {
                    const double u =
                        rng::cell_uniform(config.seed, path, step, rng::Stream::jump_count);
                    const unsigned n_jumps = rng::poisson_inverse(u, jump_mean);
                    if (n_jumps > 0) {
                        rng::NormalStream sizes(config.seed, path, step, rng::Stream::jump_size);
                        for (unsigned k = 0; k < n_jumps; ++k) {
                            jump_sum += params.mu_j + params.sigma_j * sizes.next();
                        }
                    }
                }
                s *= std::exp((r - 0.5 * variance - comp) * dt + std::sqrt(variance * dt) * z +
                              jump_sum);
                grid.values(p, t + 1) = s;
            }
        }
    });
    return grid;
}

std::pair<PathGrid, VarianceGrid> simulate_heston(double S0, const HestonParams& params,
                                                  const SimulationConfig& config,
                                                  unsigned n_threads) {
    if (!(S0 > 0.0)) throw DomainError("S0 must be > 0");
    params.validate();
    config.validate();

    PathGrid prices;
    prices.config = config;
    prices.values.resize(static_cast<Eigen::Index>(config.n_paths),
                         static_cast<Eigen::Index>(config.n_steps + 1));
    VarianceGrid variances;
    variances.values.resize(static_cast<Eigen::Index>(config.n_paths),
                            static_cast<Eigen::Index>(config.n_steps + 1));

    const double dt = config.dt();
    const double r = config.risk_free_rate;

    parallel_over_paths(config.n_paths, n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            const auto path = static_cast<std::uint32_t>(p);
            double s = S0;
            double v = params.v0;  // carried state, may dip below zero
            prices.values(p, 0) = s;
            variances.values(p, 0) = std::max(v, 0.0);
            for (std::size_t t = 0; t < config.n_steps; ++t) {
                const auto step = static_cast<std::uint32_t>(t);
                const double z1 = rng::cell_normal(config.seed, path, step, rng::Stream::diffusion);
                const double z_tilde =
                    rng::cell_normal(config.seed, path, step, rng::Stream::variance);
                const double z2 = correlate(z1, z_tilde, params.rho);

                const double v_plus = std::max(v, 0.0);
                s *= std::exp((r - 0.5 * v_plus - 0.0) * dt + std::sqrt(v_plus * dt) * z1 + 0.0);
                v = v + params.kappa * (params.theta - v_plus) * dt +
                    params.sigma_v * std::sqrt(v_plus * dt) * z2;

                prices.values(p, t + 1) = s;
                variances.values(p, t + 1) = std::max(v, 0.0);
            }
        }
    });
    return {std::move(prices), std::move(variances)};
}

double heston_mean_variance(double kappa, double theta, double v0, double t) {
    return theta + (v0 - theta) * std::exp(-kappa * t);
}

std::vector<double> heston_mean_variance_path(const HestonParams& params, double v0,
                                              const std::vector<double>& times) {
    params.validate();
    std::vector<double> out;
    out.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw DomainError("times must be >= 0");
        if (i > 0 && times[i] < times[i - 1]) throw DomainError("times must be non-decreasing");
        out.push_back(heston_mean_variance(params.kappa, params.theta, v0, times[i]));
    }
    return out;
}

void dump_grid_csv(const PathGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write grid CSV '" + path.string() + "'");
    out << "path";
    for (Eigen::Index c = 0; c < grid.values.cols(); ++c) out << ",step" << c;
    out << '\n';
    char buf[32];
    for (Eigen::Index p = 0; p < grid.values.rows(); ++p) {
        out << p;
        for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", grid.values(p, c));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace vollab
