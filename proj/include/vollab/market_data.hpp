#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vollab/common.hpp"

namespace vollab {

/// One quoted option contract on an underlying.
struct OptionContract {
    double strike = 0.0;
    double market_price = 0.0;
    double implied_volatility = 0.0;  // annualized fraction, e.g. 0.55
    Date expiration;
    OptionType option_type = OptionType::call;

    /// Throws ValidationError unless strike > 0, market_price >= 0 and
    /// implied_volatility > 0.
    void validate() const;
};

/// A dated option chain for one underlying plus the pricing context it was
/// captured with. Contracts are kept sorted ascending by strike.
struct OptionChainSnapshot {
    std::string symbol;
    double spot = 0.0;
    Date as_of;
    double risk_free_rate = 0.0;  // annualized fraction
    std::vector<OptionContract> contracts;

    void validate() const;
};

/// Daily close series, strictly increasing dates.
struct PriceHistory {
    std::string symbol;
    std::vector<std::pair<Date, double>> observations;

    void validate() const;
};

/// Log returns derived from a PriceHistory; dates are aligned to the later
/// observation of each consecutive pair.
struct ReturnSeries {
    std::vector<double> values;
    std::vector<Date> source_dates;
};

// ---------------------------------------------------------------------------
// File and HTTP ingestion
// ---------------------------------------------------------------------------

/// Resolves a fixture path: absolute paths pass through, relative paths are
/// joined onto $VOLLAB_DATA_DIR when that variable is set.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

/// Loads and validates a snapshot JSON file. Contracts are sorted by strike.
/// Throws ParseError on schema violations (naming the offending field) and
/// ValidationError on invariant violations.
OptionChainSnapshot load_snapshot(const std::filesystem::path& path);

/// Parses snapshot JSON from an in-memory buffer; same contract as load_snapshot.
OptionChainSnapshot parse_snapshot(const std::string& json_text);

/// Writes a snapshot back to disk with full numeric precision, such that
/// load_snapshot(save_snapshot(s)) == s field-by-field.
void save_snapshot(const OptionChainSnapshot& snapshot, const std::filesystem::path& path);

/// Fetches a snapshot over HTTP: GET {endpoint}/{symbol}. Produces the same
/// result as load_snapshot on identical bytes. Throws TransportError when the
/// request never completes, StatusError on non-2xx, ParseError on bad bodies.
OptionChainSnapshot fetch_snapshot(const std::string& endpoint, const std::string& symbol);

/// Loads a `date,close` CSV price history.
PriceHistory load_history(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Derived series
// ---------------------------------------------------------------------------

/// Year fraction between two dates. ACT/365: (calendar days)/365.
/// Throws DomainError when expiration precedes as_of.
double time_to_expiry(const Date& expiration, const Date& as_of,
                      DayCount convention = DayCount::act365);

/// values[i] = ln(close[i+1] / close[i]); requires >= 2 observations.
ReturnSeries log_returns(const PriceHistory& history);

/// Rolling sample variance (unbiased, divisor window-1) aligned to window
/// end. Output length = returns length - window + 1.
std::vector<double> realized_variance(const ReturnSeries& returns, std::size_t window);

}  // namespace vollab
