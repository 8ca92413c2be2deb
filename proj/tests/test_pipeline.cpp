#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "stocklab/errors.hpp"
#include "stocklab/market_data.hpp"
#include "stocklab/messages.hpp"
#include "stocklab/pipeline.hpp"
#include "testutil.hpp"

using namespace stocklab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("stocklab_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

// Writes the planted corpus to disk and returns a config pointing at it.
RunConfig planted_config(const fs::path& dir, std::uint64_t seed, std::size_t n,
                         double noise) {
    auto corpus = testutil::planted_corpus(seed, n, noise);
    {
        std::ofstream out(dir / "messages.csv", std::ios::binary);
        serialize_messages_csv(corpus.messages, out);
    }
    {
        std::ofstream out(dir / "ohlc.csv", std::ios::binary);
        serialize_ohlc_csv(corpus.series, out);
    }
    RunConfig cfg;
    cfg.messages_csv = (dir / "messages.csv").string();
    cfg.ohlc_csv = (dir / "ohlc.csv").string();
    cfg.symbol = "PLNT";
    cfg.scheme = "binary";
    cfg.out_dir = (dir / "label").string();
    cfg.seed = 42;
    return cfg;
}

RunConfig labelled_config(const fs::path& dir, RunConfig cfg) {
    cmd_label(cfg);
    cfg.labelled_csv = (fs::path(cfg.out_dir) / "labelled.csv").string();
    cfg.out_dir = (dir / "train").string();
    return cfg;
}

}  // namespace

TEST_CASE("cmd_label writes the labelled dataset and balance summary") {
    fs::path dir = fresh_dir("label");
    RunConfig cfg = planted_config(dir, 1, 300, 0.0);
    CommandResult res = cmd_label(cfg);
    REQUIRE_FALSE(res.lines.empty());
    CHECK(res.lines[0].find("300 messages labelled, 0 excluded") != std::string::npos);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "config.txt"));

    std::string labelled = slurp(fs::path(cfg.out_dir) / "labelled.csv");
    CHECK(count_lines(labelled) == 301);  // header + one row per message
    std::string balance = slurp(fs::path(cfg.out_dir) / "balance.csv");
    CHECK(balance.find("positive") != std::string::npos);
    CHECK(balance.find("negative") != std::string::npos);
}

TEST_CASE("cmd_label empty input succeeds with empty outputs") {
    fs::path dir = fresh_dir("label_empty");
    RunConfig cfg = planted_config(dir, 2, 50, 0.0);
    {
        std::ofstream out(dir / "messages.csv", std::ios::binary);
        serialize_messages_csv({}, out);
    }
    CommandResult res = cmd_label(cfg);
    CHECK(res.lines[0] == "0 messages labelled, 0 excluded");
    CHECK(count_lines(slurp(fs::path(cfg.out_dir) / "labelled.csv")) == 1);
}

TEST_CASE("cmd_label reports every out-of-span message id") {
    fs::path dir = fresh_dir("label_span");
    RunConfig cfg = planted_config(dir, 3, 20, 0.0);
    auto corpus = testutil::planted_corpus(3, 20, 0.0);
    corpus.messages[4].datetime = "2031-01-01T00:00:00Z";
    corpus.messages[4].message_id = "strayA";
    corpus.messages[9].datetime = "2031-01-02T00:00:00Z";
    corpus.messages[9].message_id = "strayB";
    {
        std::ofstream out(dir / "messages.csv", std::ios::binary);
        serialize_messages_csv(corpus.messages, out);
    }
    try {
        cmd_label(cfg);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string what = e.what();
        CHECK(what.find("strayA") != std::string::npos);
        CHECK(what.find("strayB") != std::string::npos);
    }
}

TEST_CASE("cmd_prep writes the cleaned corpus and dropped sidecar") {
    fs::path dir = fresh_dir("prep");
    RunConfig cfg = planted_config(dir, 4, 60, 0.0);
    auto corpus = testutil::planted_corpus(4, 60, 0.0);
    corpus.messages[0].message = "RT @someone ignore this";
    {
        std::ofstream out(dir / "messages.csv", std::ios::binary);
        serialize_messages_csv(corpus.messages, out);
    }
    cfg.out_dir = (dir / "prep").string();
    CommandResult res = cmd_prep(cfg);
    CHECK(res.lines[0] == "59 messages cleaned, 1 retweets dropped");
    CHECK(count_lines(slurp(fs::path(cfg.out_dir) / "corpus.txt")) == 59);
    std::string sidecar = slurp(fs::path(cfg.out_dir) / "dropped.csv");
    CHECK(count_lines(sidecar) == 61);
    CHECK(sidecar.find("true") != std::string::npos);
}

TEST_CASE("train then eval on planted data reaches high macro F1") {
    fs::path dir = fresh_dir("train_eval");
    RunConfig cfg = labelled_config(dir, planted_config(dir, 5, 600, 0.0));

    for (const char* model : {"nb", "lr"}) {
        cfg.model = model;
        cfg.out_dir = (dir / (std::string("train_") + model)).string();
        CommandResult tr = cmd_train(cfg);
        CHECK(tr.lines[0].find("trained") != std::string::npos);
        fs::path model_file = fs::path(cfg.out_dir) / "model.txt";
        fs::path vocab_file = fs::path(cfg.out_dir) / "vocab.csv";
        REQUIRE(fs::exists(model_file));
        REQUIRE(fs::exists(vocab_file));

        RunConfig ev = cfg;
        ev.model_file = model_file.string();
        ev.vocab_file = vocab_file.string();
        ev.out_dir = (dir / (std::string("eval_") + model)).string();
        CommandResult er = cmd_eval(ev);
        REQUIRE(er.lines.size() == 2);
        std::string report = slurp(fs::path(ev.out_dir) / "report.csv");
        auto pos = report.find("macro_avg");
        REQUIRE(pos != std::string::npos);
        // macro_avg,precision,recall,f1,support -> grab the f1 field
        std::istringstream row(report.substr(pos));
        std::string cell;
        for (int i = 0; i < 4; ++i) std::getline(row, cell, ',');
        CHECK(std::stod(cell) >= 0.9);
        CHECK(fs::exists(fs::path(ev.out_dir) / "confusion.csv"));
    }
}

TEST_CASE("cmd_cv and cmd_grid produce ranked deterministic tables") {
    fs::path dir = fresh_dir("cv_grid");
    RunConfig cfg = labelled_config(dir, planted_config(dir, 6, 400, 0.1));

    cfg.out_dir = (dir / "cv").string();
    CommandResult cv = cmd_cv(cfg);
    CHECK(cv.lines[0].find("5-fold mean macro F1") != std::string::npos);
    std::string cv_csv = slurp(fs::path(cfg.out_dir) / "cv.csv");
    CHECK(count_lines(cv_csv) == 7);  // header + 5 folds + mean

    cfg.out_dir = (dir / "grid").string();
    CommandResult gr = cmd_grid(cfg);
    CHECK(gr.lines[0].find("best cell") != std::string::npos);
    std::string grid_csv = slurp(fs::path(cfg.out_dir) / "grid.csv");
    CHECK(count_lines(grid_csv) == 5);  // header + 4 cells

    // rerun reproduces the table byte for byte
    cmd_grid(cfg);
    CHECK(slurp(fs::path(cfg.out_dir) / "grid.csv") == grid_csv);
}

TEST_CASE("cmd_signal prints the decision line per symbol") {
    fs::path dir = fresh_dir("signal");
    RunConfig cfg = labelled_config(dir, planted_config(dir, 7, 500, 0.0));
    cfg.out_dir = (dir / "train").string();
    cmd_train(cfg);

    RunConfig sg = cfg;
    sg.model_file = (fs::path(cfg.out_dir) / "model.txt").string();
    sg.vocab_file = (fs::path(cfg.out_dir) / "vocab.csv").string();
    sg.out_dir = (dir / "signal").string();
    CommandResult res = cmd_signal(sg);
    REQUIRE(res.lines.size() == 2);
    CHECK(res.lines[0].find("PLNT") != std::string::npos);
    bool invest = res.lines[1] == "Invest!";
    bool avoid = res.lines[1] == "Avoid investing!";
    CHECK((invest || avoid));
    CHECK(invest);  // planted data is separable, so the window precision is high
    std::string csv = slurp(fs::path(sg.out_dir) / "signal.csv");
    CHECK(csv.find("PLNT,invest") != std::string::npos);
}

TEST_CASE("cmd_report aggregates sibling runs") {
    fs::path dir = fresh_dir("report");
    RunConfig cfg = labelled_config(dir, planted_config(dir, 8, 300, 0.0));
    cfg.out_dir = (dir / "runs" / "train_nb").string();
    cmd_train(cfg);
    RunConfig ev = cfg;
    ev.model_file = (fs::path(cfg.out_dir) / "model.txt").string();
    ev.vocab_file = (fs::path(cfg.out_dir) / "vocab.csv").string();
    ev.out_dir = (dir / "runs" / "eval_nb").string();
    cmd_eval(ev);
    RunConfig lb = cfg;
    lb.out_dir = (dir / "runs" / "label").string();
    cmd_label(lb);

    RunConfig rp;
    rp.out_dir = (dir / "runs").string();
    CommandResult res = cmd_report(rp);
    CHECK(res.lines[0].find("1 eval runs") != std::string::npos);
    std::string cmp = slurp(fs::path(rp.out_dir) / "comparison.csv");
    CHECK(count_lines(cmp) == 2);
    CHECK(cmp.find("eval_nb,nb,tfidf,binary") != std::string::npos);
    std::string bal = slurp(fs::path(rp.out_dir) / "class_balance.csv");
    CHECK(count_lines(bal) == 3);  // header + positive + negative

    RunConfig nothing;
    nothing.out_dir = (dir / "empty_scan").string();
    fs::create_directories(dir / "empty_scan");
    CHECK_THROWS_AS(cmd_report(nothing), ValidationError);
}

TEST_CASE("label and train reruns are byte-identical") {
    fs::path dir = fresh_dir("determinism");
    RunConfig cfg = planted_config(dir, 9, 250, 0.0);

    cmd_label(cfg);
    std::string labelled1 = slurp(fs::path(cfg.out_dir) / "labelled.csv");
    RunConfig tr = cfg;
    tr.labelled_csv = (fs::path(cfg.out_dir) / "labelled.csv").string();
    tr.out_dir = (dir / "train").string();
    cmd_train(tr);
    std::string model1 = slurp(fs::path(tr.out_dir) / "model.txt");
    std::string vocab1 = slurp(fs::path(tr.out_dir) / "vocab.csv");
    std::string config1 = slurp(fs::path(tr.out_dir) / "config.txt");

    fs::remove_all(cfg.out_dir);
    fs::remove_all(tr.out_dir);
    cmd_label(cfg);
    cmd_train(tr);
    CHECK(slurp(fs::path(cfg.out_dir) / "labelled.csv") == labelled1);
    CHECK(slurp(fs::path(tr.out_dir) / "model.txt") == model1);
    CHECK(slurp(fs::path(tr.out_dir) / "vocab.csv") == vocab1);
    CHECK(slurp(fs::path(tr.out_dir) / "config.txt") == config1);
}

TEST_CASE("config snapshot round-trips through save/load") {
    RunConfig cfg;
    cfg.scheme = "pct3";
    cfg.alignment = "prev-day";
    cfg.tz_offset = -4;
    cfg.model = "lr";
    cfg.lr_lambda = 0.25;
    cfg.seed = 1234;
    cfg.grid_nb_alphas = {0.5, 1.0};
    std::ostringstream out;
    cfg.save(out);
    std::istringstream in(out.str());
    RunConfig back = RunConfig::load(in);
    std::ostringstream out2;
    back.save(out2);
    CHECK(out.str() == out2.str());
    CHECK(back.scheme == "pct3");
    CHECK(back.tz_offset == -4);
    CHECK(back.lr_lambda == 0.25);
    CHECK(back.grid_nb_alphas == std::vector<double>{0.5, 1.0});
    // stage seeds differ per stage but are stable
    CHECK(cfg.stage_seed("split") == back.stage_seed("split"));
    CHECK(cfg.stage_seed("split") != cfg.stage_seed("cv"));
    CHECK_THROWS_AS(cfg.set("no_such_key", "1"), ValidationError);
}

TEST_CASE("fetch_ohlc talks to an HTTP endpoint and surfaces failures") {
    httplib::Server server;
    server.Get("/TSLA", [](const httplib::Request& req, httplib::Response& res) {
        REQUIRE(req.get_param_value("start") == "2020-07-10");
        REQUIRE(req.get_param_value("end") == "2020-07-16");
        res.set_content("Date,Open,High,Low,Close,Adj Close,Volume\n", "text/csv");
    });
    server.Get("/EMPTY", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("", "text/csv");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread runner([&server] { server.listen_after_bind(); });
    server.wait_until_ready();
    std::string base = "http://127.0.0.1:" + std::to_string(port);

    std::string body =
        fetch_ohlc("TSLA", Date(2020, 7, 10), Date(2020, 7, 16), base);
    CHECK(body == "Date,Open,High,Low,Close,Adj Close,Volume\n");

    CHECK_THROWS_AS(fetch_ohlc("MISSING", Date(2020, 7, 10), Date(2020, 7, 16), base),
                    ComputeError);  // 404 status
    CHECK_THROWS_AS(fetch_ohlc("EMPTY", Date(2020, 7, 10), Date(2020, 7, 16), base),
                    ComputeError);  // empty body
    server.stop();
    runner.join();
    CHECK_THROWS_AS(
        fetch_ohlc("TSLA", Date(2020, 7, 10), Date(2020, 7, 16), "http://127.0.0.1:1"),
        ComputeError);  // transport failure
}
