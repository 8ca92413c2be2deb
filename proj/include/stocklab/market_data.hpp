#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stocklab/dates.hpp"

namespace stocklab {

enum class Provenance { Observed, Imputed };

// One daily bar. Prices strictly positive, low <= min(open,close),
// max(open,close) <= high, volume >= 0.
struct OhlcBar {
    Date date;
    double open = 0;
    double high = 0;
    double low = 0;
    double close = 0;
    double adj_close = 0;
    std::int64_t volume = 0;
    Provenance provenance = Provenance::Observed;
};

// Bars sorted by strictly increasing date. After fill_calendar consecutive
// bars differ by exactly one calendar day and both ends are Observed.
struct PriceSeries {
    std::string symbol;
    std::vector<OhlcBar> bars;

    // Index of the bar at `date`, or -1.
    int find(Date date) const;
    bool contiguous() const;
};

// Parses the seven-column `Date,Open,High,Low,Close,Adj Close,Volume` CSV.
// All bars come back Observed and sorted by date.
// Throws ValidationError naming the offending row.
PriceSeries parse_ohlc_csv(std::istream& in, const std::string& symbol,
                           DateFormat date_format);

void serialize_ohlc_csv(const PriceSeries& series, std::ostream& out);

// Fills every missing calendar day between the first and last bar with the
// field-wise midpoint of the nearest observed bars flanking the gap. All
// days of a multi-day gap share the same imputed values. Idempotent.
// Requires at least 2 bars.
PriceSeries fill_calendar(const PriceSeries& series);

// HTTP GET `{base}/{symbol}?start={iso}&end={iso}`, returning the raw body.
// Never parses. Throws ComputeError on transport failure, non-2xx status,
// or an empty body (each distinguishable by message).
std::string fetch_ohlc(const std::string& symbol, Date start, Date end,
                       const std::string& endpoint_base);

}  // namespace stocklab
