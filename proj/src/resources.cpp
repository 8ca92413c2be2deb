// Embedded resource tables for the preprocessing pipeline. These are fixed,
// versioned data: edits here must bump resource_version() so run snapshots
// stay comparable.

#include "stocklab/textprep.hpp"

namespace stocklab {

std::string resource_version() { return "stocklab-resources-1"; }

namespace {

const char* kStopwords[] = {
    "a",       "about",   "above",    "after",   "again",      "against",  "all",
    "am",      "an",      "and",      "any",     "are",        "as",       "at",
    "be",      "because", "been",     "before",  "being",      "below",    "between",
    "both",    "but",     "by",       "can",     "did",        "do",       "does",
    "doing",   "down",    "during",   "each",    "few",        "for",      "from",
    "further", "had",     "has",      "have",    "having",     "he",       "her",
    "here",    "hers",    "herself",  "him",     "himself",    "his",      "how",
    "i",       "if",      "in",       "into",    "is",         "it",       "its",
    "itself",  "just",    "me",       "more",    "most",       "my",       "myself",
    "no",      "nor",     "not",      "now",     "of",         "off",      "on",
    "once",    "only",    "or",       "other",   "our",        "ours",     "ourselves",
    "out",     "over",    "own",      "same",    "she",        "should",   "so",
    "some",    "such",    "than",     "that",    "the",        "their",    "theirs",
    "them",    "themselves", "then",  "there",   "these",      "they",     "this",
    "those",   "through", "to",       "too",     "under",      "until",    "up",
    "very",    "was",     "we",       "were",    "what",       "when",     "where",
    "which",   "while",   "who",      "whom",    "why",        "will",     "with",
    "you",     "your",    "yours",    "yourself", "yourselves",
};

struct Pair {
    const char* from;
    const char* to;
};

const Pair kContractions[] = {
    {"ain't", "is not"},       {"aren't", "are not"},     {"can't", "can not"},
    {"couldn't", "could not"}, {"didn't", "did not"},     {"doesn't", "does not"},
    {"don't", "do not"},       {"hadn't", "had not"},     {"hasn't", "has not"},
    {"haven't", "have not"},   {"he'd", "he would"},      {"he'll", "he will"},
    {"he's", "he is"},         {"i'd", "i would"},        {"i'll", "i will"},
    {"i'm", "i am"},           {"i've", "i have"},        {"isn't", "is not"},
    {"it'd", "it would"},      {"it'll", "it will"},      {"it's", "it is"},
    {"let's", "let us"},       {"mightn't", "might not"}, {"mustn't", "must not"},
    {"shan't", "shall not"},   {"she'd", "she would"},    {"she'll", "she will"},
    {"she's", "she is"},       {"shouldn't", "should not"}, {"that's", "that is"},
    {"there's", "there is"},   {"they'd", "they would"},  {"they'll", "they will"},
    {"they're", "they are"},   {"they've", "they have"},  {"wasn't", "was not"},
    {"we'd", "we would"},      {"we'll", "we will"},      {"we're", "we are"},
    {"we've", "we have"},      {"weren't", "were not"},   {"what's", "what is"},
    {"when's", "when is"},     {"where's", "where is"},   {"who's", "who is"},
    {"won't", "will not"},     {"wouldn't", "would not"}, {"you'd", "you would"},
    {"you'll", "you will"},    {"you're", "you are"},     {"you've", "you have"},
};

const Pair kEmoji[] = {
    {"\U0001F680", "rocket"},
    {"\U0001F3CE", "racing_car"},
    {"\U0001F90F", "pinching_hand"},
    {"\U0001F600", "grinning_face"},
    {"\U0001F602", "face_with_tears_of_joy"},
    {"\U0001F60D", "smiling_face_with_heart_eyes"},
    {"\U0001F60E", "smiling_face_with_sunglasses"},
    {"\U0001F62D", "loudly_crying_face"},
    {"\U0001F622", "crying_face"},
    {"\U0001F621", "enraged_face"},
    {"\U0001F631", "face_screaming_in_fear"},
    {"\U0001F914", "thinking_face"},
    {"\U0001F911", "money_mouth_face"},
    {"\U0001F921", "clown_face"},
    {"\U0001F92F", "exploding_head"},
    {"\U0001F973", "partying_face"},
    {"\U0001F525", "fire"},
    {"\U0001F48E", "gem_stone"},
    {"\U0001F64C", "raising_hands"},
    {"\U0001F64F", "folded_hands"},
    {"\U0001F4B0", "money_bag"},
    {"\U0001F4B5", "dollar_banknote"},
    {"\U0001F4C8", "chart_increasing"},
    {"\U0001F4C9", "chart_decreasing"},
    {"\U0001F315", "full_moon"},
    {"\U0001F319", "crescent_moon"},
    {"\U0001F402", "ox"},
    {"\U0001F43B", "bear"},
    {"\U0001F44D", "thumbs_up"},
    {"\U0001F44E", "thumbs_down"},
    {"\U00002764", "red_heart"},
    {"\U0001F4AA", "flexed_biceps"},
    {"\U0001F4AF", "hundred_points"},
    {"\U0001F4A5", "collision"},
    {"\U000026A0", "warning"},
    {"\U00002705", "check_mark_button"},
    {"\U0000274C", "cross_mark"},
    {"\U0001F3AF", "direct_hit"},
    {"\U00002B50", "star"},
    {"\U0001F31F", "glowing_star"},
    {"\U0001F389", "party_popper"},
    {"\U0001F91D", "handshake"},
    {"\U0001F440", "eyes"},
    {"\U0001F4C5", "calendar"},
    {"\U0001F4F0", "newspaper"},
};

const char* kHashtagWords[] = {
    "aapl",      "amazon",    "amzn",      "analysis", "apple",    "bear",
    "bearish",   "best",      "big",       "bitcoin",  "breakout", "bull",
    "bullish",   "buy",       "call",      "calls",    "cash",     "chart",
    "crash",     "crypto",    "day",       "diamond",  "dip",      "dividend",
    "down",      "dump",      "earnings",  "facebook", "fb",       "gain",
    "gains",     "go",        "going",     "goog",     "googl",    "google",
    "green",     "hands",     "high",      "hodl",     "hold",     "invest",
    "investing", "investment", "long",     "loss",     "losses",   "low",
    "market",    "markets",   "money",     "month",    "moon",     "netflix",
    "news",      "nflx",      "now",       "option",   "options",  "price",
    "profit",    "profits",   "pump",      "put",      "puts",     "rally",
    "red",       "resistance", "rocket",   "sell",     "short",    "squeeze",
    "stock",     "stocks",    "support",   "target",   "tesla",    "today",
    "tomorrow",  "top",       "trade",     "trader",   "trading",  "tsla",
    "up",        "week",      "win",       "year",     "yolo",
};

}  // namespace

PipelineConfig PipelineConfig::defaults() {
    PipelineConfig c;
    for (const char* w : kStopwords) c.stopwords.insert(w);
    for (const Pair& p : kContractions) c.contractions.emplace(p.from, p.to);
    for (const Pair& p : kEmoji) c.emoji_names.emplace(p.from, p.to);
    for (const char* w : kHashtagWords) c.hashtag_dictionary.insert(w);
    for (const char* w : kStopwords) c.hashtag_dictionary.insert(w);
    return c;
}

}  // namespace stocklab
