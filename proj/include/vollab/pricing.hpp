#pragma once

#include "vollab/common.hpp"
#include "vollab/path_engine.hpp"

namespace vollab {

/// Discounted mean payoff with its Monte Carlo standard error.
struct PriceEstimate {
    double price = 0.0;
    double standard_error = 0.0;
    std::size_t n_paths = 0;
};

/// Terminal payoff: call max(S_T - K, 0), put max(K - S_T, 0).
double payoff(double terminal_price, double strike, OptionType type);

/// value * exp(-r * T).
double discount(double value, double rate, double horizon_T);

/// Prices a contract off a simulated grid. The grid horizon must match T.
/// standard_error is the discounted sample std of payoffs / sqrt(n_paths).
PriceEstimate mc_price(const PathGrid& grid, double strike, OptionType type, double rate,
                       double horizon_T);

/// Standard normal CDF.
double norm_cdf(double x);

/// Closed-form European price; sigma=0 or T=0 degenerate limits return the
/// deterministic/intrinsic value.
double black_scholes_price(double S0, double strike, double rate, double sigma, double horizon_T,
                           OptionType type);

/// Jump-diffusion call series oracle: Poisson-weighted Black-Scholes terms
/// conditioned on the jump count, truncated after n_terms. Handles both the
/// compensated and uncompensated drift conventions of MertonJumpParams.
/// `sigma` is the diffusion volatility; jump.sigma is ignored.
double merton_series_price(double S0, double strike, double rate, double sigma, double horizon_T,
                           const MertonJumpParams& jump, unsigned n_terms = 50);

}  // namespace vollab
