#include <doctest.h>

#include <string>
#include <vector>

#include "stocklab/textprep.hpp"

using namespace stocklab;

namespace {

const PipelineConfig& cfg() {
    static PipelineConfig c = PipelineConfig::defaults();
    return c;
}

std::vector<std::string> toks(const std::string& raw) { return preprocess(raw, cfg()).tokens; }

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

}  // namespace

TEST_CASE("documented normalization examples") {
    CHECK(toks("$TSLA trash") == std::vector<std::string>{"tsla", "trash"});
    CHECK(toks("$TSLA https://www.tesmanian.com/blogs/tesmanian-blog/tesla \U0001F3CE\U0001F90F") ==
          std::vector<std::string>{"tsla", "racing_car", "pinching_hand"});
    CHECK(toks("aapl jul 17 382.50 calls") ==
          std::vector<std::string>{"aapl", "jul", "17", "382", "50", "calls"});
}

TEST_CASE("empty and trivial inputs") {
    CleanMessage m = preprocess("", cfg());
    CHECK(m.tokens.empty());
    CHECK_FALSE(m.dropped);
    CHECK(toks("   \t  ").empty());
    CHECK(toks("the a of") == std::vector<std::string>{});  // stopwords only
}

TEST_CASE("retweets are dropped, and only retweets") {
    CleanMessage rt = preprocess("RT @someone buy now", cfg());
    CHECK(rt.dropped);
    CHECK(rt.tokens.empty());
    CHECK_FALSE(preprocess("RTX is up", cfg()).dropped);
    CHECK_FALSE(preprocess("buy RT @someone", cfg()).dropped);  // not a prefix
    PipelineConfig no_rt = cfg();
    no_rt.drop_retweets = false;
    CHECK_FALSE(preprocess("RT @someone buy now", no_rt).dropped);
}

TEST_CASE("URLs, mentions and emoji") {
    CHECK(toks("check http://example.com/x?q=1 chart") ==
          std::vector<std::string>{"check", "chart"});
    CHECK(toks("see www.example.com today") == std::vector<std::string>{"see", "today"});
    CHECK(toks("@elonmusk nice work") == std::vector<std::string>{"nice", "work"});
    CHECK(toks("\U0001F680\U0001F680 to mars") ==
          std::vector<std::string>{"rocket", "rocket", "mars"});
    // variation selector after an emoji must not leak into tokens
    CHECK(toks("❤️ it") == std::vector<std::string>{"red_heart"});
}

TEST_CASE("cashtags, contractions and repeat squeeze") {
    CHECK(toks("$AAPL and $tsla") == std::vector<std::string>{"aapl", "tsla"});
    CHECK(toks("I don't like it") == std::vector<std::string>{"like"});
    CHECK(toks("won’t sell") == std::vector<std::string>{"sell"});  // curly apostrophe
    CHECK(toks("soooo gooood") == std::vector<std::string>{"soo", "good"});
    CHECK(toks("SOOOO BULLISH") == std::vector<std::string>{"soo", "bullish"});
}

TEST_CASE("hashtag segmentation") {
    CHECK(segment_hashtag("StockToTheMoon", cfg().hashtag_dictionary) ==
          std::vector<std::string>{"stock", "to", "the", "moon"});
    CHECK(segment_hashtag("tsla", cfg().hashtag_dictionary) ==
          std::vector<std::string>{"tsla"});
    CHECK(segment_hashtag("xyzzyq", cfg().hashtag_dictionary) ==
          std::vector<std::string>{"xyzzyq"});
    CHECK(segment_hashtag("buy_the_dip", cfg().hashtag_dictionary) ==
          std::vector<std::string>{"buy", "the", "dip"});
    CHECK(segment_hashtag("tsla420", cfg().hashtag_dictionary) ==
          std::vector<std::string>{"tsla", "420"});
    // greedy longest-prefix on an all-lowercase run
    CHECK(segment_hashtag("stockstoday", cfg().hashtag_dictionary) ==
          std::vector<std::string>{"stocks", "today"});
    CHECK(toks("#StockToTheMoon now") ==
          std::vector<std::string>{"stock", "moon"});  // stopwords removed afterwards
}

TEST_CASE("idempotence and token hygiene") {
    const std::vector<std::string> samples = {
        "$TSLA trash",
        "RT @x ignore",
        "#ToTheMoon \U0001F680\U0001F680\U0001F680 don't sellllll!!!",
        "Mixed CASE with @user and http://u.rl plus $AMZN #BuyTheDip",
        "numbers 382.50 and 1,000 remain",
        "\U0001F4C8\U0001F4C9 charts",
        "soooo   many    spaces",
        "",
    };
    for (const auto& s : samples) {
        CleanMessage once = preprocess(s, cfg());
        if (once.dropped) continue;
        CleanMessage twice = preprocess(join(once.tokens), cfg());
        CHECK(twice.tokens == once.tokens);
        for (const auto& t : once.tokens) {
            CHECK_FALSE(t.empty());
            for (char ch : t) {
                CHECK(ch != '@');
                CHECK(ch != '#');
                CHECK(ch != '$');
                CHECK(ch != ' ');
                CHECK_FALSE((ch >= 'A' && ch <= 'Z'));
            }
        }
    }
}

TEST_CASE("stage toggles are honoured") {
    PipelineConfig keep = cfg();
    keep.remove_stopwords = false;
    CHECK(preprocess("to the moon", keep).tokens ==
          std::vector<std::string>{"to", "the", "moon"});
    PipelineConfig raw_hash = cfg();
    raw_hash.segment_hashtags = false;
    raw_hash.remove_stopwords = false;
    CHECK(preprocess("#ToTheMoon", raw_hash).tokens ==
          std::vector<std::string>{"tothemoon"});
    PipelineConfig no_fold = cfg();
    no_fold.fold_case = false;
    no_fold.remove_stopwords = false;
    CHECK(preprocess("Hello World", no_fold).tokens ==
          std::vector<std::string>{"Hello", "World"});
}

TEST_CASE("resource version is stable") {
    CHECK(resource_version() == "stocklab-resources-1");
    CHECK_FALSE(cfg().stopwords.empty());
    CHECK_FALSE(cfg().contractions.empty());
    CHECK_FALSE(cfg().emoji_names.empty());
    CHECK_FALSE(cfg().hashtag_dictionary.empty());
}
