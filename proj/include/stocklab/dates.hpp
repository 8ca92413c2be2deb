#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace stocklab {

// Calendar date stored as a day count since the civil epoch (1970-01-01).
// Arithmetic in whole days; no time-of-day component.
class Date {
public:
    Date() = default;
    explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}
    Date(int year, unsigned month, unsigned day);

    std::int32_t days() const { return days_; }
    Date operator+(int d) const { return Date(days_ + d); }
    Date operator-(int d) const { return Date(days_ - d); }
    int operator-(Date other) const { return days_ - other.days_; }
    auto operator<=>(const Date&) const = default;

    int year() const;
    unsigned month() const;
    unsigned day() const;

    // "YYYY-MM-DD"
    std::string to_iso() const;

    static std::optional<Date> parse_iso(const std::string& s);
    // "DD/MM/YYYY"
    static std::optional<Date> parse_dmy(const std::string& s);

private:
    std::int32_t days_ = 0;
};

enum class DateFormat { Iso, DayMonthYear };

std::optional<Date> parse_date(const std::string& s, DateFormat fmt);

// Parses "2020-07-16T23:08:47Z" and returns (utc_date, seconds_of_day).
struct Timestamp {
    Date date;
    std::int32_t seconds_of_day = 0;

    // Shift by whole hours and truncate to the local calendar date.
    Date local_date(int tz_offset_hours) const;
};

std::optional<Timestamp> parse_timestamp(const std::string& s);

}  // namespace stocklab
