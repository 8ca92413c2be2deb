#pragma once

// Shared synthetic-data generators and independent oracles for the test
// suites. Oracles here are coded straight from the definitions and must not
// reuse library internals beyond plain data types.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stocklab/labelling.hpp"
#include "stocklab/market_data.hpp"

namespace testutil {

using namespace stocklab;

// Random contiguous daily series with valid OHLC ordering.
inline PriceSeries random_series(std::mt19937_64& rng, std::size_t days,
                                 Date start = Date(2020, 1, 1)) {
    std::uniform_real_distribution<double> jump(-0.05, 0.05);
    std::uniform_real_distribution<double> wick(0.0, 0.03);
    PriceSeries s;
    s.symbol = "TEST";
    double price = 100.0;
    for (std::size_t i = 0; i < days; ++i) {
        OhlcBar b;
        b.date = start + static_cast<int>(i);
        b.open = price;
        b.close = price * (1.0 + jump(rng));
        b.high = std::max(b.open, b.close) * (1.0 + wick(rng));
        b.low = std::min(b.open, b.close) * (1.0 - wick(rng));
        b.adj_close = b.close;
        b.volume = static_cast<std::int64_t>(1000 + rng() % 1000000);
        b.provenance = Provenance::Observed;
        s.bars.push_back(b);
        price = b.close;
    }
    return s;
}

// Brute-force day labeller implementing the price-change definitions
// directly; outcome empty means excluded (2-label neutral band).
struct OracleLabel {
    bool has_pct = false;
    double pct = 0.0;
    bool excluded = false;
    Sentiment outcome = Sentiment::Negative;
};

inline OracleLabel oracle_label_day(const PriceSeries& series, Date date, SchemeKind kind,
                                    double threshold, Alignment align,
                                    bool prev_open_reference) {
    const OhlcBar* today = nullptr;
    const OhlcBar* prev = nullptr;
    for (const auto& b : series.bars) {
        if (b.date == date) today = &b;
        if (b.date == date - 1) prev = &b;
    }
    OracleLabel out;
    if (kind == SchemeKind::Binary) {
        double reference = align == Alignment::SameDay ? today->open : prev->close;
        out.outcome = today->close > reference ? Sentiment::Positive : Sentiment::Negative;
        return out;
    }
    double reference;
    if (align == Alignment::SameDay) reference = today->open;
    else reference = prev_open_reference ? prev->open : prev->close;
    out.has_pct = true;
    out.pct = (today->close - reference) / reference * 100.0;
    if (out.pct > threshold) out.outcome = Sentiment::Positive;
    else if (out.pct < -threshold) out.outcome = Sentiment::Negative;
    else if (kind == SchemeKind::PctThree) out.outcome = Sentiment::Neutral;
    else out.excluded = true;
    return out;
}

// Planted-signal corpus: each trading day's price direction is random, and
// every message for that day spells the direction out in its tokens.
struct PlantedCorpus {
    PriceSeries series;          // contiguous, same-day binary separable
    std::vector<RawMessage> messages;
};

inline PlantedCorpus planted_corpus(std::uint64_t seed, std::size_t n_messages,
                                    double token_noise = 0.0) {
    static const char* kPos[] = {"moon", "rocket", "bullrun", "rally", "surge", "breakout"};
    static const char* kNeg[] = {"crash", "bearish", "dump", "plunge", "tank", "selloff"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    PlantedCorpus out;
    std::size_t days = std::max<std::size_t>(30, n_messages / 20);
    Date start(2020, 1, 1);
    out.series.symbol = "PLNT";
    double price = 100.0;
    std::vector<bool> up(days);
    for (std::size_t i = 0; i < days; ++i) {
        bool rise = rng() % 2 == 0;
        up[i] = rise;
        OhlcBar b;
        b.date = start + static_cast<int>(i);
        b.open = price;
        b.close = price * (rise ? 1.02 : 0.98);  // clears the 0.5% band
        b.high = std::max(b.open, b.close) * 1.01;
        b.low = std::min(b.open, b.close) * 0.99;
        b.adj_close = b.close;
        b.volume = 1000000;
        out.series.bars.push_back(b);
        price = b.close;
    }

    for (std::size_t m = 0; m < n_messages; ++m) {
        std::size_t day = rng() % days;
        bool rise = up[day];
        std::string text;
        std::size_t len = 3 + rng() % 4;
        for (std::size_t t = 0; t < len; ++t) {
            bool flip = unit(rng) < token_noise;
            bool pos = rise != flip;
            const char* word = pos ? kPos[rng() % 6] : kNeg[rng() % 6];
            if (t) text += ' ';
            text += word;
        }
        Date d = start + static_cast<int>(day);
        char dt[40];
        std::snprintf(dt, sizeof(dt), "%sT%02u:%02u:%02uZ", d.to_iso().c_str(),
                      static_cast<unsigned>(rng() % 24), static_cast<unsigned>(rng() % 60),
                      static_cast<unsigned>(rng() % 60));
        out.messages.push_back({"PLNT", text, dt, "u" + std::to_string(m % 97),
                                std::to_string(100000 + m)});
    }
    return out;
}

}  // namespace testutil
