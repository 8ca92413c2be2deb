#include "stocklab/dates.hpp"

#include <cstdio>

namespace stocklab {

namespace {

using days = std::chrono::days;
using sys_days = std::chrono::sys_days;

std::chrono::year_month_day ymd_of(std::int32_t d) {
    return std::chrono::year_month_day(sys_days(days(d)));
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
    auto ymd = std::chrono::year_month_day(std::chrono::year(year),
                                           std::chrono::month(month),
                                           std::chrono::day(day));
    days_ = static_cast<std::int32_t>(sys_days(ymd).time_since_epoch().count());
}

int Date::year() const { return static_cast<int>(ymd_of(days_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(ymd_of(days_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(ymd_of(days_).day()); }

std::string Date::to_iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

static bool valid_ymd(int y, unsigned m, unsigned d) {
    auto ymd = std::chrono::year_month_day(std::chrono::year(y), std::chrono::month(m),
                                           std::chrono::day(d));
    return ymd.ok();
}

std::optional<Date> Date::parse_iso(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = '\0';
    if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) return std::nullopt;
    if (!valid_ymd(y, m, d)) return std::nullopt;
    return Date(y, m, d);
}

std::optional<Date> Date::parse_dmy(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = '\0';
    if (std::sscanf(s.c_str(), "%u/%u/%d%c", &d, &m, &y, &tail) != 3) return std::nullopt;
    if (!valid_ymd(y, m, d)) return std::nullopt;
    return Date(y, m, d);
}

std::optional<Date> parse_date(const std::string& s, DateFormat fmt) {
    return fmt == DateFormat::Iso ? Date::parse_iso(s) : Date::parse_dmy(s);
}

Date Timestamp::local_date(int tz_offset_hours) const {
    std::int64_t total = static_cast<std::int64_t>(seconds_of_day) + 3600LL * tz_offset_hours;
    std::int32_t shift = 0;
    while (total < 0) {
        total += 86400;
        --shift;
    }
    while (total >= 86400) {
        total -= 86400;
        ++shift;
    }
    return date + shift;
}

std::optional<Timestamp> parse_timestamp(const std::string& s) {
    int y = 0;
    unsigned mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char z = '\0';
    int n = std::sscanf(s.c_str(), "%d-%u-%uT%u:%u:%u%c", &y, &mo, &d, &h, &mi, &sec, &z);
    if (n < 6) return std::nullopt;
    if (n == 7 && z != 'Z') return std::nullopt;
    if (!valid_ymd(y, mo, d) || h > 23 || mi > 59 || sec > 60) return std::nullopt;
    Timestamp ts;
    ts.date = Date(y, mo, d);
    ts.seconds_of_day = static_cast<std::int32_t>(h * 3600 + mi * 60 + sec);
    return ts;
}

}  // namespace stocklab
