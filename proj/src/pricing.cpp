#include "vollab/pricing.hpp"

#include <cmath>
#include <numbers>

namespace vollab {

double payoff(double terminal_price, double strike, OptionType type) {
    if (type == OptionType::call) {
        return std::max(terminal_price - strike, 0.0);
    }
    return std::max(strike - terminal_price, 0.0);
}

double discount(double value, double rate, double horizon_T) {
    if (!(horizon_T >= 0.0)) throw DomainError("horizon_T must be >= 0");
    return value * std::exp(-rate * horizon_T);
}

PriceEstimate mc_price(const PathGrid& grid, double strike, OptionType type, double rate,
                       double horizon_T) {
    const auto n = grid.values.rows();
    if (n == 0 || grid.values.cols() == 0) {
        throw DomainError("mc_price requires a non-empty path grid");
    }
    if (std::abs(horizon_T - grid.config.horizon_T) >
        1e-9 * std::max(1.0, grid.config.horizon_T)) {
        throw DomainError("horizon_T does not match the grid horizon");
    }

    const auto terminal = grid.values.col(grid.values.cols() - 1);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        sum += payoff(terminal(i), strike, type);
    }
    const double mean = sum / static_cast<double>(n);

    double sum_sq_dev = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = payoff(terminal(i), strike, type) - mean;
        sum_sq_dev += d * d;
    }
    const double sample_std =
        n > 1 ? std::sqrt(sum_sq_dev / static_cast<double>(n - 1)) : 0.0;

    PriceEstimate est;
    est.price = discount(mean, rate, horizon_T);
    est.standard_error = discount(sample_std / std::sqrt(static_cast<double>(n)), rate, horizon_T);
    est.n_paths = static_cast<std::size_t>(n);
    return est;
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double black_scholes_price(double S0, double strike, double rate, double sigma, double horizon_T,
                           OptionType type) {
    if (!(S0 > 0.0) || !(strike > 0.0)) throw DomainError("S0 and strike must be > 0");
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    if (!(horizon_T >= 0.0)) throw DomainError("horizon_T must be >= 0");

    if (horizon_T == 0.0) {
        return payoff(S0, strike, type);
    }
    if (sigma == 0.0) {
        const double discounted_strike = strike * std::exp(-rate * horizon_T);
        return type == OptionType::call ? std::max(S0 - discounted_strike, 0.0)
                                        : std::max(discounted_strike - S0, 0.0);
    }

    const double vol_sqrt_t = sigma * std::sqrt(horizon_T);
    const double d1 =
        (std::log(S0 / strike) + (rate + 0.5 * sigma * sigma) * horizon_T) / vol_sqrt_t;
    const double d2 = d1 - vol_sqrt_t;
    const double discounted_strike = strike * std::exp(-rate * horizon_T);
    if (type == OptionType::call) {
        return S0 * norm_cdf(d1) - discounted_strike * norm_cdf(d2);
    }
    return discounted_strike * norm_cdf(-d2) - S0 * norm_cdf(-d1);
}

double merton_series_price(double S0, double strike, double rate, double sigma, double horizon_T,
                           const MertonJumpParams& jump, unsigned n_terms) {
    if (n_terms < 1) throw DomainError("n_terms must be >= 1");
    jump.validate();
    if (horizon_T == 0.0) {
        return payoff(S0, strike, OptionType::call);
    }

    // Conditioned on n jumps the terminal log-price is Gaussian, so each term
    // is a Black-Scholes value with jump-adjusted rate and volatility:
    //   sigma_n^2 = sigma^2 + n*sigma_j^2/T
    //   rho_n     = r - c + n*(mu_j + sigma_j^2/2)/T
    // weighted by Poisson(n; lambda*T) * exp((rho_n - r)*T) to undo the
    // term's own discounting. For the compensated drift this reduces to the
    // classic reweighting with intensity lambda*(1 + compensator/lambda).
    const double comp = jump.compensator();
    const double mean_jumps = jump.lambda_j * horizon_T;
    const double log_jump_mean = jump.mu_j + 0.5 * jump.sigma_j * jump.sigma_j;

    double weight = std::exp(-mean_jumps);  // Poisson pmf at n = 0
    double total = 0.0;
    for (unsigned n = 0; n <= n_terms; ++n) {
        if (n > 0) {
            weight *= mean_jumps / static_cast<double>(n);
        }
        const double sigma_n =
            std::sqrt(sigma * sigma + static_cast<double>(n) * jump.sigma_j * jump.sigma_j /
                                          horizon_T);
        const double rho_n = rate - comp + static_cast<double>(n) * log_jump_mean / horizon_T;
        const double term =
            black_scholes_price(S0, strike, rho_n, sigma_n, horizon_T, OptionType::call);
        total += weight * std::exp((rho_n - rate) * horizon_T) * term;
        if (weight < 1e-18 && n > mean_jumps) break;
    }
    return total;
}

}  // namespace vollab
