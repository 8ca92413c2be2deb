#include "stocklab/textprep.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>

namespace stocklab {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

char fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Decodes one UTF-8 codepoint; malformed bytes come back as themselves with
// length 1 so the pipeline never stalls.
std::uint32_t next_codepoint(const std::string& s, size_t pos, size_t& len) {
    unsigned char c = static_cast<unsigned char>(s[pos]);
    len = 1;
    if (c < 0x80) return c;
    int extra = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) { extra = 1; cp = c & 0x1F; }
    else if ((c & 0xF0) == 0xE0) { extra = 2; cp = c & 0x0F; }
    else if ((c & 0xF8) == 0xF0) { extra = 3; cp = c & 0x07; }
    else return c;
    if (pos + extra >= s.size()) return c;
    for (int i = 1; i <= extra; ++i) {
        unsigned char cc = static_cast<unsigned char>(s[pos + i]);
        if ((cc & 0xC0) != 0x80) return c;
        cp = (cp << 6) | (cc & 0x3F);
    }
    len = 1 + extra;
    return cp;
}

std::string remove_urls(const std::string& text) {
    std::string out;
    size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            out += text[i++];
            continue;
        }
        size_t end = i;
        while (end < text.size() && !is_space(text[end])) ++end;
        std::string chunk = text.substr(i, end - i);
        size_t scheme = chunk.find("://");
        if (scheme != std::string::npos) {
            // back up over the scheme name; it must start with a letter
            size_t start = scheme;
            while (start > 0) {
                char c = chunk[start - 1];
                if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '.' ||
                    c == '-') {
                    --start;
                } else {
                    break;
                }
            }
            chunk.erase(start);
            out += chunk;
        } else {
            std::string low;
            for (char c : chunk) low += fold(c);
            if (low.rfind("www.", 0) != 0) out += chunk;
        }
        i = end;
    }
    return out;
}

std::string remove_mentions(const std::string& text) {
    std::string out;
    for (size_t i = 0; i < text.size();) {
        if (text[i] == '@' && i + 1 < text.size() && is_word_char(text[i + 1])) {
            ++i;
            while (i < text.size() && is_word_char(text[i])) ++i;
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::string demojize(const std::string& text,
                     const std::map<std::string, std::string>& names) {
    std::string out;
    for (size_t i = 0; i < text.size();) {
        size_t len = 0;
        std::uint32_t cp = next_codepoint(text, i, len);
        if (cp == 0xFE0F) {  // variation selector
            i += len;
            continue;
        }
        std::string key = text.substr(i, len);
        auto it = names.find(key);
        if (it != names.end()) {
            out += ' ';
            out += it->second;
            out += ' ';
        } else {
            out += key;
        }
        i += len;
    }
    return out;
}

std::string normalize_cashtags(const std::string& text) {
    std::string out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '$' && i + 1 < text.size() &&
            std::isalpha(static_cast<unsigned char>(text[i + 1])))
            continue;
        out += text[i];
    }
    return out;
}

std::string segment_hashtags_in(const std::string& text,
                                const std::set<std::string>& dict) {
    std::string out;
    for (size_t i = 0; i < text.size();) {
        if (text[i] == '#' && i + 1 < text.size() && is_word_char(text[i + 1])) {
            size_t end = i + 1;
            while (end < text.size() && is_word_char(text[end])) ++end;
            auto tokens = segment_hashtag(text.substr(i + 1, end - i - 1), dict);
            for (const auto& t : tokens) {
                out += ' ';
                out += t;
            }
            out += ' ';
            i = end;
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::string expand_contractions(const std::string& text,
                                const std::map<std::string, std::string>& table) {
    // normalize the curly apostrophe first
    std::string norm;
    for (size_t i = 0; i < text.size();) {
        size_t len = 0;
        std::uint32_t cp = next_codepoint(text, i, len);
        if (cp == 0x2019) norm += '\'';
        else norm += text.substr(i, len);
        i += len;
    }

    std::string out;
    size_t i = 0;
    while (i < norm.size()) {
        if (is_space(norm[i])) {
            out += norm[i++];
            continue;
        }
        size_t end = i;
        while (end < norm.size() && !is_space(norm[end])) ++end;
        std::string word = norm.substr(i, end - i);
        size_t lo = 0, hi = word.size();
        auto core_char = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
        };
        while (lo < hi && !core_char(word[lo])) ++lo;
        while (hi > lo && !core_char(word[hi - 1])) --hi;
        std::string core_low;
        for (size_t k = lo; k < hi; ++k) core_low += fold(word[k]);
        auto it = table.find(core_low);
        if (it != table.end()) {
            out += word.substr(0, lo) + it->second + word.substr(hi);
        } else {
            out += word;
        }
        i = end;
    }
    return out;
}

std::string squeeze_repeats(const std::string& text, int limit) {
    std::string out;
    char prev = '\0';
    int run = 0;
    for (char c : text) {
        bool letter = std::isalpha(static_cast<unsigned char>(c));
        if (letter && fold(c) == prev) {
            ++run;
        } else {
            prev = letter ? fold(c) : '\0';
            run = 1;
        }
        if (!letter || run <= limit) out += c;
    }
    return out;
}

std::string strip_punct(const std::string& text) {
    std::string out;
    for (size_t i = 0; i < text.size();) {
        size_t len = 0;
        std::uint32_t cp = next_codepoint(text, i, len);
        if (cp < 0x80 && (is_word_char(static_cast<char>(cp)) ||
                          is_space(static_cast<char>(cp)))) {
            out += static_cast<char>(cp);
        } else {
            out += ' ';
        }
        i += len;
    }
    return out;
}

}  // namespace

std::vector<std::string> segment_hashtag(const std::string& body,
                                         const std::set<std::string>& dictionary) {
    // pass 1: split at underscores, camelCase and letter/digit boundaries
    std::vector<std::string> pieces;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            pieces.push_back(cur);
            cur.clear();
        }
    };
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '_') {
            flush();
            continue;
        }
        if (!cur.empty()) {
            char p = cur.back();
            bool pu = std::isupper(static_cast<unsigned char>(p));
            bool pl = std::islower(static_cast<unsigned char>(p));
            bool pd = std::isdigit(static_cast<unsigned char>(p));
            bool cu = std::isupper(static_cast<unsigned char>(c));
            bool cl = std::islower(static_cast<unsigned char>(c));
            bool cd = std::isdigit(static_cast<unsigned char>(c));
            bool next_lower = i + 1 < body.size() &&
                              std::islower(static_cast<unsigned char>(body[i + 1]));
            if ((pl && cu) || (pd && (cu || cl)) || ((pu || pl) && cd) ||
                (pu && cu && next_lower)) {
                flush();
            }
        }
        cur += fold(c);
    }
    flush();

    // pass 2: greedy longest-prefix dictionary match on letter runs
    std::vector<std::string> out;
    for (const auto& piece : pieces) {
        bool letters = !piece.empty();
        for (char c : piece)
            if (!std::islower(static_cast<unsigned char>(c))) letters = false;
        if (!letters || dictionary.empty()) {
            out.push_back(piece);
            continue;
        }
        std::vector<std::string> parts;
        size_t pos = 0;
        bool stuck = false;
        while (pos < piece.size()) {
            size_t best = 0;
            for (size_t len = piece.size() - pos; len >= 1; --len) {
                if (dictionary.count(piece.substr(pos, len))) {
                    best = len;
                    break;
                }
            }
            if (best == 0) {
                stuck = true;
                break;
            }
            parts.push_back(piece.substr(pos, best));
            pos += best;
        }
        if (stuck) {
            // matched prefix words, then the unmatched residue as one token
            for (auto& p : parts) out.push_back(std::move(p));
            out.push_back(piece.substr(pos));
        } else {
            for (auto& p : parts) out.push_back(std::move(p));
        }
    }
    return out;
}

CleanMessage preprocess(const std::string& raw, const PipelineConfig& config) {
    CleanMessage result;
    if (config.drop_retweets && raw.rfind("RT @", 0) == 0) {
        result.dropped = true;
        return result;
    }
    std::string text = raw;
    if (config.remove_urls) text = remove_urls(text);
    if (config.remove_mentions) text = remove_mentions(text);
    if (config.demojize) text = demojize(text, config.emoji_names);
    if (config.normalize_cashtags) text = normalize_cashtags(text);
    if (config.segment_hashtags) text = segment_hashtags_in(text, config.hashtag_dictionary);
    if (config.expand_contractions) text = expand_contractions(text, config.contractions);
    if (config.squeeze_repeats) text = squeeze_repeats(text, config.repeat_limit);
    if (config.strip_punctuation) text = strip_punct(text);
    if (config.fold_case)
        for (char& c : text) c = fold(c);

    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        if (config.remove_stopwords && config.stopwords.count(token)) continue;
        result.tokens.push_back(token);
    }
    return result;
}

}  // namespace stocklab
