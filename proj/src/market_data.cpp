#include "stocklab/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "stocklab/csv.hpp"
#include "stocklab/errors.hpp"

namespace stocklab {

namespace {

const char* kHeader[7] = {"Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"};

double parse_price(const std::string& s, size_t row, const char* col) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("row " + std::to_string(row) + ": malformed " + col +
                              " value '" + s + "'");
    }
}

void validate_bar(const OhlcBar& b, size_t row) {
    const double prices[5] = {b.open, b.high, b.low, b.close, b.adj_close};
    for (double p : prices) {
        if (!(p > 0))
            throw ValidationError("row " + std::to_string(row) + ": non-positive price");
    }
    if (b.volume < 0)
        throw ValidationError("row " + std::to_string(row) + ": negative volume");
    if (b.low > std::min(b.open, b.close) || std::max(b.open, b.close) > b.high)
        throw ValidationError("row " + std::to_string(row) +
                              ": low/high ordering violated");
}

std::string format_price(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int PriceSeries::find(Date date) const {
    auto it = std::lower_bound(bars.begin(), bars.end(), date,
                               [](const OhlcBar& b, Date d) { return b.date < d; });
    if (it == bars.end() || it->date != date) return -1;
    return static_cast<int>(it - bars.begin());
}

bool PriceSeries::contiguous() const {
    for (size_t i = 1; i < bars.size(); ++i)
        if (bars[i].date - bars[i - 1].date != 1) return false;
    return true;
}

PriceSeries parse_ohlc_csv(std::istream& in, const std::string& symbol,
                           DateFormat date_format) {
    std::vector<std::string> fields;
    if (!csv::read_record(in, fields))
        throw ValidationError("empty input: missing OHLC header row");
    if (fields.size() != 7)
        throw ValidationError("OHLC header must have exactly 7 columns, got " +
                              std::to_string(fields.size()));
    for (int i = 0; i < 7; ++i) {
        if (fields[i] != kHeader[i])
            throw ValidationError(std::string("unexpected OHLC header column '") +
                                  fields[i] + "', expected '" + kHeader[i] + "'");
    }

    PriceSeries series;
    series.symbol = symbol;
    std::set<std::int32_t> seen;
    size_t row = 1;
    while (csv::read_record(in, fields)) {
        ++row;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 7)
            throw ValidationError("row " + std::to_string(row) + ": expected 7 fields, got " +
                                  std::to_string(fields.size()));
        OhlcBar bar;
        auto d = parse_date(fields[0], date_format);
        if (!d)
            throw ValidationError("row " + std::to_string(row) + ": malformed date '" +
                                  fields[0] + "'");
        bar.date = *d;
        if (!seen.insert(d->days()).second)
            throw ValidationError("row " + std::to_string(row) + ": duplicate date " +
                                  d->to_iso());
        bar.open = parse_price(fields[1], row, "Open");
        bar.high = parse_price(fields[2], row, "High");
        bar.low = parse_price(fields[3], row, "Low");
        bar.close = parse_price(fields[4], row, "Close");
        bar.adj_close = parse_price(fields[5], row, "Adj Close");
        double vol = parse_price(fields[6], row, "Volume");
        if (std::floor(vol) != vol && std::abs(vol) < 1e15) {
            // Yahoo writes volumes like 1.17E+08; keep the nearest count.
            vol = std::llround(vol);
        }
        bar.volume = static_cast<std::int64_t>(vol);
        bar.provenance = Provenance::Observed;
        validate_bar(bar, row);
        series.bars.push_back(bar);
    }
    std::sort(series.bars.begin(), series.bars.end(),
              [](const OhlcBar& a, const OhlcBar& b) { return a.date < b.date; });
    return series;
}

void serialize_ohlc_csv(const PriceSeries& series, std::ostream& out) {
    out << "Date,Open,High,Low,Close,Adj Close,Volume\n";
    for (const auto& b : series.bars) {
        out << b.date.to_iso() << ',' << format_price(b.open) << ',' << format_price(b.high)
            << ',' << format_price(b.low) << ',' << format_price(b.close) << ','
            << format_price(b.adj_close) << ',' << b.volume << '\n';
    }
}

PriceSeries fill_calendar(const PriceSeries& series) {
    std::vector<OhlcBar> observed;
    for (const auto& b : series.bars)
        if (b.provenance == Provenance::Observed) observed.push_back(b);
    if (observed.size() < 2)
        throw ValidationError("fill_calendar needs at least 2 observed bars, got " +
                              std::to_string(observed.size()));

    PriceSeries out;
    out.symbol = series.symbol;
    for (size_t i = 0; i + 1 < observed.size(); ++i) {
        const OhlcBar& prev = observed[i];
        const OhlcBar& next = observed[i + 1];
        out.bars.push_back(prev);
        OhlcBar mid;
        mid.open = (prev.open + next.open) / 2.0;
        mid.high = (prev.high + next.high) / 2.0;
        mid.low = (prev.low + next.low) / 2.0;
        mid.close = (prev.close + next.close) / 2.0;
        mid.adj_close = (prev.adj_close + next.adj_close) / 2.0;
        mid.volume = (prev.volume + next.volume + 1) / 2;  // half-up
        mid.provenance = Provenance::Imputed;
        for (Date d = prev.date + 1; d < next.date; d = d + 1) {
            mid.date = d;
            out.bars.push_back(mid);
        }
    }
    out.bars.push_back(observed.back());
    return out;
}

}  // namespace stocklab
