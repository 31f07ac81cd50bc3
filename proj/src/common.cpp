#include "vollab/common.hpp"

#include <cstdio>

namespace vollab {

Date Date::parse(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3 || text.size() != 10) {
        throw ParseError("invalid date '" + text + "', expected YYYY-MM-DD");
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) {
        throw ParseError("impossible calendar date '" + text + "'");
    }
    return Date{ymd};
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

long days_between(const Date& from, const Date& to) {
    return (to.to_sys_days() - from.to_sys_days()).count();
}

Date add_days(const Date& d, long days) {
    return Date{std::chrono::year_month_day{d.to_sys_days() + std::chrono::days{days}}};
}

std::string to_string(OptionType type) {
    return type == OptionType::call ? "call" : "put";
}

OptionType option_type_from_string(const std::string& text) {
    if (text == "call") return OptionType::call;
    if (text == "put") return OptionType::put;
    throw ParseError("unknown option_type '" + text + "', expected \"call\" or \"put\"");
}

}  // namespace vollab
