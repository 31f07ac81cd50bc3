#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace vollab {

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure surfaced by the library derives from Error so
// callers can catch broadly at the CLI boundary and still discriminate in
// tests.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input bytes (JSON/CSV schema violations, truncated bodies).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally well-formed input that violates a domain invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// Precondition violation on an operation argument.
struct DomainError : Error {
    using Error::Error;
};

/// Network-level failure before an HTTP status was received.
struct TransportError : Error {
    using Error::Error;
};

/// HTTP response with a non-2xx status.
struct StatusError : Error {
    StatusError(int status, const std::string& what) : Error(what), status(status) {}
    int status;
};

/// Non-finite value encountered inside a numeric routine.
struct NumericError : Error {
    using Error::Error;
};

/// Optimizer failed to produce a usable parameter set.
struct CalibrationError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Calendar dates
// ---------------------------------------------------------------------------

/// Calendar date, ISO 8601 in files ("YYYY-MM-DD").
struct Date {
    std::chrono::year_month_day ymd{};

    Date() = default;
    explicit Date(std::chrono::year_month_day d) : ymd(d) {}
    Date(int year, unsigned month, unsigned day)
        : ymd(std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}) {}

    /// Parses "YYYY-MM-DD"; throws ParseError on malformed or impossible dates.
    static Date parse(const std::string& text);

    std::string to_string() const;

    std::chrono::sys_days to_sys_days() const { return std::chrono::sys_days{ymd}; }

    friend bool operator==(const Date& a, const Date& b) { return a.ymd == b.ymd; }
    friend bool operator!=(const Date& a, const Date& b) { return !(a == b); }
    friend bool operator<(const Date& a, const Date& b) { return a.to_sys_days() < b.to_sys_days(); }
    friend bool operator<=(const Date& a, const Date& b) { return a.to_sys_days() <= b.to_sys_days(); }
    friend bool operator>(const Date& a, const Date& b) { return b < a; }
    friend bool operator>=(const Date& a, const Date& b) { return b <= a; }
};

/// Signed number of calendar days from `from` to `to`.
long days_between(const Date& from, const Date& to);

/// Adds a signed number of calendar days.
Date add_days(const Date& d, long days);

// ---------------------------------------------------------------------------
// Contract side
// ---------------------------------------------------------------------------

enum class OptionType { call, put };

std::string to_string(OptionType type);

/// Accepts exactly "call" or "put"; throws ParseError otherwise.
OptionType option_type_from_string(const std::string& text);

/// Day-count convention for year fractions. Only ACT/365 is supported.
enum class DayCount { act365 };

}  // namespace vollab
