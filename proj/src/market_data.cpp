#include "vollab/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace vollab {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* field) {
    if (!obj.contains(field)) {
        throw ParseError(std::string("missing field '") + field + "'");
    }
    if (!obj[field].is_number()) {
        throw ParseError(std::string("field '") + field + "' must be a number");
    }
    return obj[field].get<double>();
}

std::string require_string(const json& obj, const char* field) {
    if (!obj.contains(field)) {
        throw ParseError(std::string("missing field '") + field + "'");
    }
    if (!obj[field].is_string()) {
        throw ParseError(std::string("field '") + field + "' must be a string");
    }
    return obj[field].get<std::string>();
}

OptionContract parse_contract(const json& node) {
    if (!node.is_object()) {
        throw ParseError("each entry of 'contracts' must be an object");
    }
    OptionContract c;
    c.strike = require_number(node, "strike");
    c.market_price = require_number(node, "market_price");
    c.implied_volatility = require_number(node, "implied_volatility");
    c.expiration = Date::parse(require_string(node, "expiration"));
    c.option_type = option_type_from_string(require_string(node, "option_type"));
    return c;
}

}  // namespace

void OptionContract::validate() const {
    if (!(strike > 0.0)) {
        throw ValidationError("contract strike must be > 0");
    }
    if (!(market_price >= 0.0)) {
        throw ValidationError("contract market_price must be >= 0");
    }
    if (!(implied_volatility > 0.0)) {
        throw ValidationError("contract implied_volatility must be > 0");
    }
}

void OptionChainSnapshot::validate() const {
    if (symbol.empty()) {
        throw ValidationError("snapshot symbol must be non-empty");
    }
    if (!(spot > 0.0)) {
        throw ValidationError("snapshot spot must be > 0");
    }
    if (contracts.empty()) {
        throw ValidationError("snapshot contracts must be non-empty");
    }
    for (const auto& c : contracts) {
        c.validate();
        if (c.expiration < as_of) {
            throw ValidationError("contract expiration " + c.expiration.to_string() +
                                  " precedes snapshot as_of " + as_of.to_string());
        }
    }
    if (!std::is_sorted(contracts.begin(), contracts.end(),
                        [](const auto& a, const auto& b) { return a.strike < b.strike; })) {
        throw ValidationError("contracts must be sorted ascending by strike");
    }
}

void PriceHistory::validate() const {
    if (observations.size() < 2) {
        throw ValidationError("price history needs at least 2 observations");
    }
    for (std::size_t i = 0; i < observations.size(); ++i) {
        if (!(observations[i].second > 0.0)) {
            throw ValidationError("price history closes must be > 0");
        }
        if (i > 0 && !(observations[i - 1].first < observations[i].first)) {
            throw ValidationError("price history dates must be strictly increasing");
        }
    }
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path) {
    if (path.is_absolute()) {
        return path;
    }
    if (const char* base = std::getenv("VOLLAB_DATA_DIR"); base != nullptr && *base != '\0') {
        return std::filesystem::path(base) / path;
    }
    return path;
}

OptionChainSnapshot parse_snapshot(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed snapshot JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("snapshot must be a JSON object");
    }

    OptionChainSnapshot snap;
    snap.symbol = require_string(doc, "symbol");
    snap.spot = require_number(doc, "spot");
    snap.as_of = Date::parse(require_string(doc, "as_of"));
    snap.risk_free_rate = require_number(doc, "risk_free_rate");

    if (!doc.contains("contracts") || !doc["contracts"].is_array()) {
        throw ParseError("missing field 'contracts' (array)");
    }
    for (const auto& node : doc["contracts"]) {
        snap.contracts.push_back(parse_contract(node));
    }

    std::stable_sort(snap.contracts.begin(), snap.contracts.end(),
                     [](const auto& a, const auto& b) { return a.strike < b.strike; });
    snap.validate();
    return snap;
}

OptionChainSnapshot load_snapshot(const std::filesystem::path& path) {
    const auto resolved = resolve_data_path(path);
    std::ifstream in(resolved);
    if (!in) {
        throw ParseError("cannot open snapshot file '" + resolved.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_snapshot(buffer.str());
}

void save_snapshot(const OptionChainSnapshot& snapshot, const std::filesystem::path& path) {
    snapshot.validate();
    json doc;
    doc["symbol"] = snapshot.symbol;
    doc["spot"] = snapshot.spot;
    doc["as_of"] = snapshot.as_of.to_string();
    doc["risk_free_rate"] = snapshot.risk_free_rate;
    doc["contracts"] = json::array();
    for (const auto& c : snapshot.contracts) {
        doc["contracts"].push_back({{"strike", c.strike},
                                    {"market_price", c.market_price},
                                    {"implied_volatility", c.implied_volatility},
                                    {"expiration", c.expiration.to_string()},
                                    {"option_type", to_string(c.option_type)}});
    }
    std::ofstream out(resolve_data_path(path));
    if (!out) {
        throw Error("cannot write snapshot file '" + path.string() + "'");
    }
    out << doc.dump(2) << '\n';
}

OptionChainSnapshot fetch_snapshot(const std::string& endpoint, const std::string& symbol) {
    // Split "http://host:port[/base]" into client target and request path.
    std::string rest;
    if (endpoint.rfind("http://", 0) == 0) {
        rest = endpoint.substr(7);
    } else if (endpoint.rfind("https://", 0) == 0) {
        throw TransportError("https endpoints are not supported");
    } else {
        rest = endpoint;
    }
    const auto slash = rest.find('/');
    const std::string host = "http://" + rest.substr(0, slash);
    std::string base = slash == std::string::npos ? "" : rest.substr(slash);
    if (!base.empty() && base.back() == '/') {
        base.pop_back();
    }

    httplib::Client client(host);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);
    auto res = client.Get(base + "/" + symbol);
    if (!res) {
        throw TransportError("request to " + host + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw StatusError(res->status, "snapshot request for '" + symbol + "' returned status " +
                                           std::to_string(res->status));
    }
    return parse_snapshot(res->body);
}

PriceHistory load_history(const std::filesystem::path& path) {
    const auto resolved = resolve_data_path(path);
    std::ifstream in(resolved);
    if (!in) {
        throw ParseError("cannot open history file '" + resolved.string() + "'");
    }

    PriceHistory history;
    history.symbol = resolved.stem().string();

    std::string line;
    if (!std::getline(in, line) || line.rfind("date,close", 0) != 0) {
        throw ParseError("history file must start with header 'date,close'");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("history line " + std::to_string(line_no) + " is missing a comma");
        }
        const Date date = Date::parse(line.substr(0, comma));
        const std::string close_text = line.substr(comma + 1);
        std::size_t consumed = 0;
        double close = 0.0;
        try {
            close = std::stod(close_text, &consumed);
        } catch (const std::exception&) {
            throw ParseError("history line " + std::to_string(line_no) + " has a bad close value");
        }
        if (consumed != close_text.size()) {
            throw ParseError("history line " + std::to_string(line_no) + " has a bad close value");
        }
        history.observations.emplace_back(date, close);
    }
    history.validate();
    return history;
}

double time_to_expiry(const Date& expiration, const Date& as_of, DayCount convention) {
    (void)convention;  // single convention today
    const long days = days_between(as_of, expiration);
    if (days < 0) {
        throw DomainError("expiration " + expiration.to_string() + " precedes as_of " +
                          as_of.to_string());
    }
    return static_cast<double>(days) / 365.0;
}

ReturnSeries log_returns(const PriceHistory& history) {
    if (history.observations.size() < 2) {
        throw DomainError("log_returns needs at least 2 observations");
    }
    ReturnSeries series;
    series.values.reserve(history.observations.size() - 1);
    series.source_dates.reserve(history.observations.size() - 1);
    for (std::size_t i = 0; i + 1 < history.observations.size(); ++i) {
        series.values.push_back(
            std::log(history.observations[i + 1].second / history.observations[i].second));
        series.source_dates.push_back(history.observations[i + 1].first);
    }
    return series;
}

std::vector<double> realized_variance(const ReturnSeries& returns, std::size_t window) {
    if (window < 2) {
        throw DomainError("realized_variance window must be >= 2");
    }
    if (returns.values.size() < window) {
        throw DomainError("realized_variance window exceeds series length");
    }
    std::vector<double> variances;
    variances.reserve(returns.values.size() - window + 1);
    for (std::size_t end = window; end <= returns.values.size(); ++end) {
        const std::size_t begin = end - window;
        double mean = 0.0;
        for (std::size_t i = begin; i < end; ++i) mean += returns.values[i];
        mean /= static_cast<double>(window);
        double sum_sq = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double d = returns.values[i] - mean;
            sum_sq += d * d;
        }
        variances.push_back(sum_sq / static_cast<double>(window - 1));
    }
    return variances;
}

}  // namespace vollab
