#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stocklab/market_data.hpp"
#include "stocklab/messages.hpp"

namespace stocklab {

enum class SchemeKind { Binary, PctTwo, PctThree };

// Labelling scheme. The threshold is the half-width of the neutral band in
// percent and only applies to the Pct schemes.
struct LabelScheme {
    SchemeKind kind = SchemeKind::Binary;
    double threshold = 0.5;

    int num_classes() const { return kind == SchemeKind::PctThree ? 3 : 2; }
};

enum class Alignment { SameDay, PrevDay };

struct AlignmentMode {
    Alignment mode = Alignment::SameDay;
    // Percent change for PrevDay uses the previous-day close as reference.
    // This flag switches to the previous-day open instead.
    bool prev_day_open_reference = false;
};

enum class Sentiment { Negative, Neutral, Positive };

// Integer codec: Binary/PctTwo map Positive->1, Negative->0;
// PctThree maps Positive->1, Neutral->0, Negative->-1.
int label_to_int(SchemeKind kind, Sentiment s);
Sentiment label_from_int(SchemeKind kind, int code);

// Dense class index, ascending in the integer codec. Positive is always the
// last index; PctThree order is Negative, Neutral, Positive.
int class_index(SchemeKind kind, Sentiment s);
Sentiment sentiment_at(SchemeKind kind, int index);
std::string sentiment_name(Sentiment s);

struct DayLabel {
    Date date;
    LabelScheme scheme;
    AlignmentMode alignment;
    std::optional<double> pct_change;  // absent for Binary
    std::optional<Sentiment> outcome;  // empty means Excluded (PctTwo neutral band)

    bool excluded() const { return !outcome.has_value(); }
};

struct LabelledMessage {
    RawMessage raw;
    Date date;  // tz-shifted calendar date used for the join
    std::optional<double> pct_change;
    Sentiment outcome = Sentiment::Negative;
};

// Signed percent change at `date`. SameDay: 100*(close-open)/open.
// PrevDay: 100*(close_t - close_{t-1})/close_{t-1} (or the open-reference
// variant). Requires the filled series to contain the needed dates.
double pct_change(const PriceSeries& series, Date date, AlignmentMode alignment);

DayLabel label_day(const PriceSeries& series, Date date, LabelScheme scheme,
                   AlignmentMode alignment);

struct JoinResult {
    std::vector<LabelledMessage> messages;
    std::size_t excluded_count = 0;
};

// Assigns each message the DayLabel of its tz-shifted UTC calendar date.
// PctTwo-excluded messages are dropped and counted. Order preserved.
JoinResult join_messages(const std::vector<RawMessage>& messages, const PriceSeries& series,
                         LabelScheme scheme, AlignmentMode alignment, int tz_offset_hours);

// Proportions over labelled messages, keyed by sentiment; sums to 1.
std::map<Sentiment, double> class_balance(const std::vector<LabelledMessage>& labelled);

// Labelled dataset CSV:
//   symbol,message,datetime,user,message_id,pct_change,label_int
void serialize_labelled_csv(const std::vector<LabelledMessage>& labelled, SchemeKind kind,
                            std::ostream& out);

// The date column is reconstructed from the datetime with tz_offset, which
// must match the offset used when the file was written.
std::vector<LabelledMessage> parse_labelled_csv(std::istream& in, SchemeKind kind,
                                                int tz_offset_hours);

}  // namespace stocklab
