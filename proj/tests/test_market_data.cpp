#include <doctest.h>

#include <random>
#include <sstream>

#include "stocklab/csv.hpp"
#include "stocklab/errors.hpp"
#include "stocklab/market_data.hpp"
#include "testutil.hpp"

using namespace stocklab;

namespace {

const char* kWeekCsv =
    "Date,Open,High,Low,Close,Adj Close,Volume\n"
    "10/07/2020,279.2,309.784,275.202,308.93,308.93,1.17E+08\n"
    "13/07/2020,331.8,358.998,294.222,299.412,299.412,1.95E+08\n"
    "14/07/2020,311.2,318,286.2,303.36,303.36,1.17E+08\n"
    "15/07/2020,308.6,310,291.4,309.202,309.202,81839000\n"
    "16/07/2020,295.432,306.342,293.2,300.128,300.128,71504000\n";

PriceSeries week_series() {
    std::istringstream in(kWeekCsv);
    return parse_ohlc_csv(in, "TSLA", DateFormat::DayMonthYear);
}

}  // namespace

TEST_CASE("date parsing and arithmetic") {
    auto iso = Date::parse_iso("2020-07-16");
    auto dmy = Date::parse_dmy("16/07/2020");
    REQUIRE(iso);
    REQUIRE(dmy);
    CHECK(*iso == *dmy);
    CHECK(iso->to_iso() == "2020-07-16");
    CHECK((*iso - Date(2020, 7, 10)) == 6);
    CHECK_FALSE(Date::parse_iso("2020-13-01"));
    CHECK_FALSE(Date::parse_iso("16/07/2020"));
    CHECK_FALSE(Date::parse_dmy("2020-07-16"));

    auto ts = parse_timestamp("2020-07-16T23:08:47Z");
    REQUIRE(ts);
    CHECK(ts->date == *iso);
    CHECK(ts->local_date(0) == *iso);
    CHECK(ts->local_date(-4) == *iso);   // 19:08 local, same date
    CHECK(ts->local_date(1) == *iso + 1);  // rolls past midnight
}

TEST_CASE("csv quoting round-trips") {
    std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "multi\nline",
                                       ""};
    std::istringstream in(csv::join(fields) + "\n");
    std::vector<std::string> got;
    REQUIRE(csv::read_record(in, got));
    CHECK(got == fields);
}

TEST_CASE("parse_ohlc_csv reads the documented layout") {
    PriceSeries s = week_series();
    CHECK(s.symbol == "TSLA");
    REQUIRE(s.bars.size() == 5);
    CHECK(s.bars[3].date == Date(2020, 7, 15));
    CHECK(s.bars[3].open == doctest::Approx(308.6));
    CHECK(s.bars[3].close == doctest::Approx(309.202));
    CHECK(s.bars[0].volume == 117000000);
    for (const auto& b : s.bars) CHECK(b.provenance == Provenance::Observed);
}

TEST_CASE("parse_ohlc_csv edge cases") {
    SUBCASE("header-only input gives an empty series") {
        std::istringstream in("Date,Open,High,Low,Close,Adj Close,Volume\n");
        PriceSeries s = parse_ohlc_csv(in, "AAPL", DateFormat::Iso);
        CHECK(s.symbol == "AAPL");
        CHECK(s.bars.empty());
    }
    SUBCASE("non-positive price names the row") {
        std::istringstream in(
            "Date,Open,High,Low,Close,Adj Close,Volume\n"
            "2020-07-15,10,11,9,10,10,5\n"
            "2020-07-16,10,11,9,0,10,5\n");
        CHECK_THROWS_WITH_AS(parse_ohlc_csv(in, "X", DateFormat::Iso),
                             "row 3: non-positive price", ValidationError);
    }
    SUBCASE("duplicate dates rejected") {
        std::istringstream in(
            "Date,Open,High,Low,Close,Adj Close,Volume\n"
            "2020-07-15,10,11,9,10,10,5\n"
            "2020-07-15,10,11,9,10,10,5\n");
        CHECK_THROWS_AS(parse_ohlc_csv(in, "X", DateFormat::Iso), ValidationError);
    }
    SUBCASE("low/high ordering enforced") {
        std::istringstream in(
            "Date,Open,High,Low,Close,Adj Close,Volume\n"
            "2020-07-15,12,11,9,10,10,5\n");
        CHECK_THROWS_AS(parse_ohlc_csv(in, "X", DateFormat::Iso), ValidationError);
    }
    SUBCASE("malformed row reports its index") {
        std::istringstream in(
            "Date,Open,High,Low,Close,Adj Close,Volume\n"
            "2020-07-15,ten,11,9,10,10,5\n");
        CHECK_THROWS_WITH_AS(parse_ohlc_csv(in, "X", DateFormat::Iso),
                             "row 2: malformed Open value 'ten'", ValidationError);
    }
    SUBCASE("wrong header rejected") {
        std::istringstream in("Date,Open,High,Low,Close,AdjClose,Volume\n");
        CHECK_THROWS_AS(parse_ohlc_csv(in, "X", DateFormat::Iso), ValidationError);
    }
}

TEST_CASE("fill_calendar imputes the weekend gap from the flanking closes") {
    PriceSeries filled = fill_calendar(week_series());
    CHECK(filled.contiguous());
    REQUIRE(filled.bars.size() == 7);
    int i11 = filled.find(Date(2020, 7, 11));
    int i12 = filled.find(Date(2020, 7, 12));
    REQUIRE(i11 >= 0);
    REQUIRE(i12 >= 0);
    // midpoint of 308.93 and 299.412
    CHECK(filled.bars[i11].close == doctest::Approx(304.171).epsilon(1e-12));
    CHECK(filled.bars[i12].close == doctest::Approx(304.171).epsilon(1e-12));
    CHECK(filled.bars[i11].provenance == Provenance::Imputed);
    CHECK(filled.bars[i11].close == filled.bars[i12].close);
    CHECK(filled.bars[i11].open == doctest::Approx((279.2 + 331.8) / 2));
    CHECK(filled.bars[i11].volume == (117000000 + 195000000 + 1) / 2);
}

TEST_CASE("fill_calendar multi-day gap shares one midpoint") {
    std::istringstream in(
        "Date,Open,High,Low,Close,Adj Close,Volume\n"
        "2020-01-01,100.0,110,90,100,100,10\n"
        "2020-01-05,104.0,112,95,104,104,20\n");
    PriceSeries filled = fill_calendar(parse_ohlc_csv(in, "X", DateFormat::Iso));
    REQUIRE(filled.bars.size() == 5);
    for (int d = 2; d <= 4; ++d) {
        int i = filled.find(Date(2020, 1, d));
        REQUIRE(i >= 0);
        CHECK(filled.bars[i].open == doctest::Approx(102.0));
        CHECK(filled.bars[i].provenance == Provenance::Imputed);
    }
    CHECK(filled.bars.front().provenance == Provenance::Observed);
    CHECK(filled.bars.back().provenance == Provenance::Observed);
}

TEST_CASE("fill_calendar properties on random gapped series") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        PriceSeries dense = testutil::random_series(rng, 20 + rng() % 20);
        // knock out random interior days
        PriceSeries gappy;
        gappy.symbol = dense.symbol;
        for (std::size_t i = 0; i < dense.bars.size(); ++i) {
            bool interior = i > 0 && i + 1 < dense.bars.size();
            if (interior && rng() % 3 == 0) continue;
            gappy.bars.push_back(dense.bars[i]);
        }
        PriceSeries filled = fill_calendar(gappy);
        CHECK(filled.contiguous());
        CHECK(filled.bars.front().date == gappy.bars.front().date);
        CHECK(filled.bars.back().date == gappy.bars.back().date);

        // idempotence, field for field
        PriceSeries twice = fill_calendar(filled);
        REQUIRE(twice.bars.size() == filled.bars.size());
        for (std::size_t i = 0; i < filled.bars.size(); ++i) {
            CHECK(twice.bars[i].open == filled.bars[i].open);
            CHECK(twice.bars[i].close == filled.bars[i].close);
            CHECK(twice.bars[i].volume == filled.bars[i].volume);
            CHECK(twice.bars[i].provenance == filled.bars[i].provenance);
        }

        // imputed bars are midpoints of the flanking observed bars and keep
        // the low/open/close/high ordering
        for (std::size_t i = 0; i < filled.bars.size(); ++i) {
            const auto& b = filled.bars[i];
            if (b.provenance == Provenance::Observed) continue;
            std::size_t p = i, n = i;
            while (filled.bars[p].provenance == Provenance::Imputed) --p;
            while (filled.bars[n].provenance == Provenance::Imputed) ++n;
            CHECK(b.open == doctest::Approx((filled.bars[p].open + filled.bars[n].open) / 2));
            CHECK(b.close ==
                  doctest::Approx((filled.bars[p].close + filled.bars[n].close) / 2));
            CHECK(b.low <= std::min(b.open, b.close) + 1e-12);
            CHECK(std::max(b.open, b.close) <= b.high + 1e-12);
        }
    }
}

TEST_CASE("fill_calendar rejects too-short series") {
    PriceSeries s;
    s.symbol = "X";
    CHECK_THROWS_AS(fill_calendar(s), ValidationError);
    std::mt19937_64 rng(1);
    s = testutil::random_series(rng, 1);
    CHECK_THROWS_AS(fill_calendar(s), ValidationError);
}

TEST_CASE("serialize/parse round-trips a valid series") {
    std::mt19937_64 rng(11);
    PriceSeries s = testutil::random_series(rng, 25);
    std::ostringstream out;
    serialize_ohlc_csv(s, out);
    std::istringstream in(out.str());
    PriceSeries back = parse_ohlc_csv(in, s.symbol, DateFormat::Iso);
    REQUIRE(back.bars.size() == s.bars.size());
    for (std::size_t i = 0; i < s.bars.size(); ++i) {
        CHECK(back.bars[i].date == s.bars[i].date);
        CHECK(back.bars[i].open == s.bars[i].open);
        CHECK(back.bars[i].high == s.bars[i].high);
        CHECK(back.bars[i].low == s.bars[i].low);
        CHECK(back.bars[i].close == s.bars[i].close);
        CHECK(back.bars[i].adj_close == s.bars[i].adj_close);
        CHECK(back.bars[i].volume == s.bars[i].volume);
    }
}
