#include "stocklab/labelling.hpp"

#include <cmath>
#include <cstdio>

#include "stocklab/csv.hpp"
#include "stocklab/errors.hpp"

namespace stocklab {

int label_to_int(SchemeKind kind, Sentiment s) {
    if (kind == SchemeKind::PctThree) {
        switch (s) {
            case Sentiment::Positive: return 1;
            case Sentiment::Neutral: return 0;
            case Sentiment::Negative: return -1;
        }
    }
    return s == Sentiment::Positive ? 1 : 0;
}

Sentiment label_from_int(SchemeKind kind, int code) {
    if (kind == SchemeKind::PctThree) {
        switch (code) {
            case 1: return Sentiment::Positive;
            case 0: return Sentiment::Neutral;
            case -1: return Sentiment::Negative;
        }
        throw ValidationError("bad 3-label code " + std::to_string(code));
    }
    if (code == 1) return Sentiment::Positive;
    if (code == 0) return Sentiment::Negative;
    throw ValidationError("bad 2-label code " + std::to_string(code));
}

int class_index(SchemeKind kind, Sentiment s) {
    if (kind == SchemeKind::PctThree) {
        switch (s) {
            case Sentiment::Negative: return 0;
            case Sentiment::Neutral: return 1;
            case Sentiment::Positive: return 2;
        }
    }
    return s == Sentiment::Positive ? 1 : 0;
}

Sentiment sentiment_at(SchemeKind kind, int index) {
    if (kind == SchemeKind::PctThree) {
        switch (index) {
            case 0: return Sentiment::Negative;
            case 1: return Sentiment::Neutral;
            case 2: return Sentiment::Positive;
        }
        throw ValidationError("bad class index " + std::to_string(index));
    }
    if (index == 0) return Sentiment::Negative;
    if (index == 1) return Sentiment::Positive;
    throw ValidationError("bad class index " + std::to_string(index));
}

std::string sentiment_name(Sentiment s) {
    switch (s) {
        case Sentiment::Negative: return "negative";
        case Sentiment::Neutral: return "neutral";
        case Sentiment::Positive: return "positive";
    }
    return "?";
}

namespace {

const OhlcBar& bar_at(const PriceSeries& series, Date date) {
    int i = series.find(date);
    if (i < 0)
        throw ValidationError("date " + date.to_iso() + " not in price series " +
                              series.symbol);
    return series.bars[static_cast<size_t>(i)];
}

}  // namespace

double pct_change(const PriceSeries& series, Date date, AlignmentMode alignment) {
    const OhlcBar& today = bar_at(series, date);
    if (alignment.mode == Alignment::SameDay)
        return 100.0 * (today.close - today.open) / today.open;
    const OhlcBar& prev = bar_at(series, date - 1);
    double ref = alignment.prev_day_open_reference ? prev.open : prev.close;
    return 100.0 * (today.close - ref) / ref;
}

DayLabel label_day(const PriceSeries& series, Date date, LabelScheme scheme,
                   AlignmentMode alignment) {
    DayLabel out;
    out.date = date;
    out.scheme = scheme;
    out.alignment = alignment;

    if (scheme.kind == SchemeKind::Binary) {
        const OhlcBar& today = bar_at(series, date);
        double reference = alignment.mode == Alignment::SameDay
                               ? today.open
                               : bar_at(series, date - 1).close;
        // Equality counts as no gain, hence Negative.
        out.outcome = today.close > reference ? Sentiment::Positive : Sentiment::Negative;
        return out;
    }

    double pct = pct_change(series, date, alignment);
    out.pct_change = pct;
    double t = scheme.threshold;
    if (pct > t) {
        out.outcome = Sentiment::Positive;
    } else if (pct < -t) {
        out.outcome = Sentiment::Negative;
    } else if (scheme.kind == SchemeKind::PctThree) {
        out.outcome = Sentiment::Neutral;  // closed band [-t, +t]
    }
    // PctTwo in the band: outcome stays empty -> Excluded.
    return out;
}

JoinResult join_messages(const std::vector<RawMessage>& messages, const PriceSeries& series,
                         LabelScheme scheme, AlignmentMode alignment, int tz_offset_hours) {
    JoinResult result;
    // One label per distinct date; reused across messages.
    std::map<std::int32_t, DayLabel> cache;
    for (const auto& m : messages) {
        auto ts = parse_timestamp(m.datetime);
        if (!ts)
            throw ValidationError("message " + m.message_id + ": unparseable datetime '" +
                                  m.datetime + "'");
        Date date = ts->local_date(tz_offset_hours);
        auto it = cache.find(date.days());
        if (it == cache.end()) {
            if (series.find(date) < 0)
                throw ValidationError("message " + m.message_id + ": date " + date.to_iso() +
                                      " outside price series span");
            it = cache.emplace(date.days(), label_day(series, date, scheme, alignment)).first;
        }
        const DayLabel& dl = it->second;
        if (dl.excluded()) {
            ++result.excluded_count;
            continue;
        }
        LabelledMessage lm;
        lm.raw = m;
        lm.date = date;
        lm.pct_change = dl.pct_change;
        lm.outcome = *dl.outcome;
        result.messages.push_back(std::move(lm));
    }
    return result;
}

std::map<Sentiment, double> class_balance(const std::vector<LabelledMessage>& labelled) {
    if (labelled.empty()) throw ValidationError("class_balance on empty input");
    std::map<Sentiment, double> counts;
    for (const auto& m : labelled) counts[m.outcome] += 1.0;
    for (auto& [s, c] : counts) c /= static_cast<double>(labelled.size());
    return counts;
}

void serialize_labelled_csv(const std::vector<LabelledMessage>& labelled, SchemeKind kind,
                            std::ostream& out) {
    out << "symbol,message,datetime,user,message_id,pct_change,label_int\n";
    char pct[40];
    for (const auto& m : labelled) {
        std::string pct_str;
        if (m.pct_change) {
            std::snprintf(pct, sizeof(pct), "%.17g", *m.pct_change);
            pct_str = pct;
        }
        out << csv::join({m.raw.symbol, m.raw.message, m.raw.datetime, m.raw.user,
                          m.raw.message_id, pct_str,
                          std::to_string(label_to_int(kind, m.outcome))})
            << '\n';
    }
}

std::vector<LabelledMessage> parse_labelled_csv(std::istream& in, SchemeKind kind,
                                                int tz_offset_hours) {
    std::vector<std::string> fields;
    if (!csv::read_record(in, fields))
        throw ValidationError("empty input: missing labelled header row");
    const std::vector<std::string> expect = {"symbol",     "message",    "datetime", "user",
                                             "message_id", "pct_change", "label_int"};
    if (fields != expect)
        throw ValidationError("labelled CSV header mismatch");
    std::vector<LabelledMessage> out;
    size_t row = 1;
    while (csv::read_record(in, fields)) {
        ++row;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 7)
            throw ValidationError("row " + std::to_string(row) + ": expected 7 fields");
        LabelledMessage m;
        m.raw = {fields[0], fields[1], fields[2], fields[3], fields[4]};
        auto ts = parse_timestamp(m.raw.datetime);
        if (!ts)
            throw ValidationError("row " + std::to_string(row) + ": unparseable datetime");
        m.date = ts->local_date(tz_offset_hours);
        if (!fields[5].empty()) m.pct_change = std::stod(fields[5]);
        m.outcome = label_from_int(kind, std::stoi(fields[6]));
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace stocklab
