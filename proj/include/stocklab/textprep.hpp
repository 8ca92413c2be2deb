#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace stocklab {

struct CleanMessage {
    std::vector<std::string> tokens;
    bool dropped = false;  // retweets only
};

// Stage toggles follow the fixed pipeline order; disabling a stage skips it
// without reordering the rest.
struct PipelineConfig {
    bool drop_retweets = true;
    bool remove_urls = true;
    bool remove_mentions = true;
    bool demojize = true;
    bool normalize_cashtags = true;
    bool segment_hashtags = true;
    bool expand_contractions = true;
    bool squeeze_repeats = true;
    bool strip_punctuation = true;
    bool fold_case = true;
    bool remove_stopwords = true;
    int repeat_limit = 2;

    std::set<std::string> stopwords;
    std::map<std::string, std::string> contractions;       // "don't" -> "do not"
    std::map<std::string, std::string> emoji_names;        // UTF-8 emoji -> "rocket"
    std::set<std::string> hashtag_dictionary;              // lowercase words

    // Embedded, versioned resource tables.
    static PipelineConfig defaults();
};

// Runs the ordered normalization pipeline: retweet drop, URL removal,
// mention elimination, demojization, cashtag normalization, hashtag
// segmentation, contraction expansion, repeat squeeze, punctuation to
// spaces, case folding, whitespace tokenization, stopword removal.
CleanMessage preprocess(const std::string& raw, const PipelineConfig& config);

// Splits a hashtag body (no '#'): camelCase/underscore/digit boundaries
// first, then greedy longest-prefix dictionary match on lowercase runs;
// unmatched residue stays one token. Output lowercase.
std::vector<std::string> segment_hashtag(const std::string& body,
                                         const std::set<std::string>& dictionary);

// Identifier for the embedded resource tables, written into run snapshots.
std::string resource_version();

}  // namespace stocklab
