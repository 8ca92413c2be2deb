#include "stocklab/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "stocklab/csv.hpp"
#include "stocklab/errors.hpp"
#include "stocklab/market_data.hpp"
#include "stocklab/textprep.hpp"

namespace fs = std::filesystem;

namespace stocklab {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << content;
}

std::ifstream open_input(const std::string& path, const char* what) {
    if (path.empty())
        throw ValidationError(std::string(what) + " path not configured");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(std::string("cannot open ") + what + " " + path);
    return in;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    std::ostringstream snap;
    cfg.save(snap);
    write_file(dir / "config.txt", snap.str());
    return dir;
}

PriceSeries load_filled_series(const RunConfig& cfg) {
    auto in = open_input(cfg.ohlc_csv, "OHLC CSV");
    PriceSeries series = parse_ohlc_csv(in, cfg.symbol, cfg.date_format());
    return fill_calendar(series);
}

std::string balance_csv(const std::vector<LabelledMessage>& labelled, SchemeKind kind,
                        std::size_t excluded) {
    std::ostringstream out;
    out << "label,label_int,count,proportion\n";
    if (!labelled.empty()) {
        int k = kind == SchemeKind::PctThree ? 3 : 2;
        std::vector<long long> counts(static_cast<std::size_t>(k), 0);
        for (const auto& m : labelled)
            ++counts[static_cast<std::size_t>(class_index(kind, m.outcome))];
        for (int i = 0; i < k; ++i) {
            Sentiment s = sentiment_at(kind, i);
            double p = static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                       static_cast<double>(labelled.size());
            out << sentiment_name(s) << ',' << label_to_int(kind, s) << ','
                << counts[static_cast<std::size_t>(i)] << ',' << fmt(p) << '\n';
        }
    }
    out << "excluded,," << excluded << ",\n";
    return out.str();
}

struct LoadedModel {
    ModelArtifact artifact;
    Vocabulary vocab;
};

LoadedModel load_model_files(const RunConfig& cfg) {
    auto min = open_input(cfg.model_file, "model artifact");
    LoadedModel lm;
    lm.artifact = load_model(min);
    auto vin = open_input(cfg.vocab_file, "vocabulary");
    lm.vocab = load_vocab(vin);
    std::string hash = vocab_content_hash(lm.vocab);
    if (hash != lm.artifact.vocab_hash)
        throw ValidationError("vocabulary hash " + hash + " does not match model's " +
                              lm.artifact.vocab_hash);
    return lm;
}

DocTermMatrix vectorize(const TokenDocs& docs, const Vocabulary& vocab, Weighting w) {
    return w == Weighting::Count ? count_vectorize(docs, vocab)
                                 : tfidf_vectorize(docs, vocab);
}

std::string scheme_string(SchemeKind k) {
    return k == SchemeKind::Binary ? "binary" : k == SchemeKind::PctTwo ? "pct2" : "pct3";
}

GridCell cell_from_config(const RunConfig& cfg) {
    GridCell cell;
    cell.weighting = cfg.weighting();
    cell.model_kind = cfg.model;
    cell.nb_alpha = cfg.nb_alpha;
    cell.nb_variant =
        cfg.nb_variant == "bernoulli" ? NbVariant::Bernoulli : NbVariant::Multinomial;
    cell.lr.step = cfg.lr_step;
    cell.lr.lambda = cfg.lr_lambda;
    cell.lr.tol = cfg.lr_tol;
    cell.lr.max_iters = cfg.lr_max_iters;
    return cell;
}

}  // namespace

LoadedDataset load_dataset(const RunConfig& cfg) {
    auto in = open_input(cfg.labelled_csv, "labelled CSV");
    SchemeKind kind = cfg.label_scheme().kind;
    LoadedDataset ds;
    ds.rows = parse_labelled_csv(in, kind, cfg.tz_offset);
    PipelineConfig prep = cfg.pipeline_config();
    ds.data.num_classes = cfg.label_scheme().num_classes();
    ds.data.docs.reserve(ds.rows.size());
    ds.data.labels.reserve(ds.rows.size());
    for (const auto& row : ds.rows) {
        ds.data.docs.push_back(preprocess(row.raw.message, prep).tokens);
        ds.data.labels.push_back(class_index(kind, row.outcome));
    }
    return ds;
}

CommandResult cmd_fetch(const RunConfig& cfg) {
    if (cfg.endpoint.empty()) throw ValidationError("fetch: endpoint not configured");
    if (cfg.symbol.empty()) throw ValidationError("fetch: symbol not configured");
    auto start = Date::parse_iso(cfg.start_date);
    auto end = Date::parse_iso(cfg.end_date);
    if (!start || !end)
        throw ValidationError("fetch: start_date/end_date must be ISO dates");
    std::string body = fetch_ohlc(cfg.symbol, *start, *end, cfg.endpoint);
    fs::path dir = prepare_out_dir(cfg);
    fs::path out = dir / (cfg.symbol + "_ohlc.csv");
    write_file(out, body);
    return {{"fetched " + std::to_string(body.size()) + " bytes to " + out.string()}};
}

CommandResult cmd_label(const RunConfig& cfg) {
    auto min = open_input(cfg.messages_csv, "messages CSV");
    auto messages = parse_messages_csv(min);
    fs::path dir = prepare_out_dir(cfg);
    SchemeKind kind = cfg.label_scheme().kind;

    if (messages.empty()) {
        std::ostringstream lab;
        serialize_labelled_csv({}, kind, lab);
        write_file(dir / "labelled.csv", lab.str());
        write_file(dir / "balance.csv", balance_csv({}, kind, 0));
        return {{"0 messages labelled, 0 excluded"}};
    }

    PriceSeries series = load_filled_series(cfg);

    // report all out-of-span messages at once
    std::vector<std::string> bad;
    for (const auto& m : messages) {
        auto ts = parse_timestamp(m.datetime);
        if (!ts)
            throw ValidationError("message " + m.message_id + ": unparseable datetime '" +
                                  m.datetime + "'");
        Date d = ts->local_date(cfg.tz_offset);
        if (series.find(d) < 0) bad.push_back(m.message_id);
    }
    if (!bad.empty()) {
        std::string ids;
        for (const auto& id : bad) {
            if (!ids.empty()) ids += ", ";
            ids += id;
        }
        throw ValidationError("messages dated outside OHLC span: " + ids);
    }

    auto joined = join_messages(messages, series, cfg.label_scheme(), cfg.alignment_mode(),
                                cfg.tz_offset);
    std::ostringstream lab;
    serialize_labelled_csv(joined.messages, kind, lab);
    write_file(dir / "labelled.csv", lab.str());
    write_file(dir / "balance.csv",
               balance_csv(joined.messages, kind, joined.excluded_count));

    CommandResult res;
    res.lines.push_back(std::to_string(joined.messages.size()) + " messages labelled, " +
                        std::to_string(joined.excluded_count) + " excluded");
    if (!joined.messages.empty()) {
        auto props = class_balance(joined.messages);
        for (const auto& [s, p] : props)
            res.lines.push_back(sentiment_name(s) + ": " + fmt4(100.0 * p) + "%");
    }
    return res;
}

CommandResult cmd_prep(const RunConfig& cfg) {
    auto min = open_input(cfg.messages_csv, "messages CSV");
    auto messages = parse_messages_csv(min);
    PipelineConfig prep = cfg.pipeline_config();
    fs::path dir = prepare_out_dir(cfg);

    std::ostringstream corpus, dropped;
    dropped << "message_id,dropped\n";
    std::size_t dropped_count = 0;
    for (const auto& m : messages) {
        CleanMessage clean = preprocess(m.message, prep);
        if (!clean.dropped) {
            for (std::size_t i = 0; i < clean.tokens.size(); ++i) {
                if (i) corpus << ' ';
                corpus << clean.tokens[i];
            }
            corpus << '\n';
        } else {
            ++dropped_count;
        }
        dropped << csv::quote(m.message_id) << ',' << (clean.dropped ? "true" : "false")
                << '\n';
    }
    write_file(dir / "corpus.txt", corpus.str());
    write_file(dir / "dropped.csv", dropped.str());
    return {{std::to_string(messages.size() - dropped_count) + " messages cleaned, " +
             std::to_string(dropped_count) + " retweets dropped"}};
}

CommandResult cmd_train(const RunConfig& cfg) {
    LoadedDataset ds = load_dataset(cfg);
    if (ds.rows.empty()) throw ValidationError("train: labelled dataset is empty");

    SplitSpec split{cfg.train_fraction, cfg.stage_seed("split")};
    std::vector<std::size_t> train, test;
    train_test_split(ds.rows.size(), split, train, test);

    TokenDocs train_docs;
    std::vector<int> y_train;
    for (auto i : train) {
        train_docs.push_back(ds.data.docs[i]);
        y_train.push_back(ds.data.labels[i]);
    }

    std::optional<std::size_t> max_features;
    if (cfg.max_features > 0) max_features = cfg.max_features;
    Vocabulary vocab = build_vocab(train_docs, cfg.min_df, max_features);
    DocTermMatrix X = vectorize(train_docs, vocab, cfg.weighting());

    ModelArtifact artifact;
    artifact.model_kind = cfg.model;
    artifact.weighting = cfg.weighting();
    artifact.scheme = cfg.label_scheme().kind;
    artifact.alignment = cfg.alignment_mode().mode;
    artifact.tz_offset = cfg.tz_offset;
    artifact.split_seed = split.seed;
    artifact.train_fraction = split.train_fraction;
    artifact.vocab_hash = vocab_content_hash(vocab);

    if (cfg.model == "nb") {
        artifact.nb = train_nb(X, y_train, ds.data.num_classes, cfg.nb_alpha,
                               cfg.nb_variant == "bernoulli" ? NbVariant::Bernoulli
                                                             : NbVariant::Multinomial);
    } else if (cfg.model == "lr") {
        LrConfig lc{cfg.lr_step, cfg.lr_max_iters, cfg.lr_tol, cfg.lr_lambda};
        artifact.lr = train_lr(X, y_train, ds.data.num_classes, lc);
    } else {
        throw ValidationError("train: unknown model '" + cfg.model + "'");
    }

    fs::path dir = prepare_out_dir(cfg);
    std::ostringstream mo, vo;
    save_model(artifact, mo);
    save_vocab(vocab, vo);
    write_file(dir / "model.txt", mo.str());
    write_file(dir / "vocab.csv", vo.str());

    CommandResult res;
    res.lines.push_back("trained " + cfg.model + " on " + std::to_string(train.size()) +
                        " documents, " + std::to_string(vocab.size()) + " features");
    if (cfg.model == "lr")
        res.lines.push_back("final loss " + fmt(artifact.lr.final_loss) + " after " +
                            std::to_string(artifact.lr.iterations) + " iterations");
    return res;
}

CommandResult cmd_eval(const RunConfig& cfg) {
    LoadedModel lm = load_model_files(cfg);

    RunConfig eff = cfg;  // the artifact owns scheme/alignment/tz
    eff.scheme = scheme_string(lm.artifact.scheme);
    eff.alignment = lm.artifact.alignment == Alignment::SameDay ? "same-day" : "prev-day";
    eff.tz_offset = lm.artifact.tz_offset;
    LoadedDataset ds = load_dataset(eff);
    if (ds.rows.empty()) throw ValidationError("eval: labelled dataset is empty");

    SplitSpec split{lm.artifact.train_fraction, lm.artifact.split_seed};
    std::vector<std::size_t> train, test;
    train_test_split(ds.rows.size(), split, train, test);

    TokenDocs test_docs;
    std::vector<int> y_true;
    for (auto i : test) {
        test_docs.push_back(ds.data.docs[i]);
        y_true.push_back(ds.data.labels[i]);
    }
    DocTermMatrix Xt = vectorize(test_docs, lm.vocab, lm.artifact.weighting);
    std::vector<int> y_pred;
    for (std::size_t i = 0; i < Xt.n_rows; ++i)
        y_pred.push_back(lm.artifact.predict(Xt, i).label);

    int K = ds.data.num_classes;
    ConfusionMatrix cm = confusion(y_true, y_pred, K);
    ClassReport report = class_report(cm);

    fs::path dir = prepare_out_dir(cfg);
    std::ostringstream ro;
    write_report_csv(report, ro);
    write_file(dir / "report.csv", ro.str());
    std::ostringstream co;
    co << "true,pred,count\n";
    for (int t = 0; t < K; ++t)
        for (int p = 0; p < K; ++p)
            co << t << ',' << p << ',' << cm.at(t, p) << '\n';
    write_file(dir / "confusion.csv", co.str());

    return {{"evaluated " + std::to_string(test.size()) + " held-out documents",
             "accuracy " + fmt4(report.accuracy) + ", macro F1 " + fmt4(report.macro_f1)}};
}

CommandResult cmd_cv(const RunConfig& cfg) {
    LoadedDataset ds = load_dataset(cfg);
    if (ds.rows.empty()) throw ValidationError("cv: labelled dataset is empty");
    CvSpec spec{cfg.cv_k, cfg.stage_seed("cv")};
    auto folds = kfold(ds.rows.size(), spec);
    GridCell cell = cell_from_config(cfg);

    std::ostringstream out;
    out << "fold,macro_f1\n";
    double sum = 0.0;
    CommandResult res;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        double score = score_cell(cell, ds.data, folds[f].train, folds[f].test, cfg.min_df);
        sum += score;
        out << f << ',' << fmt(score) << '\n';
    }
    double mean = sum / static_cast<double>(folds.size());
    out << "mean," << fmt(mean) << '\n';
    fs::path dir = prepare_out_dir(cfg);
    write_file(dir / "cv.csv", out.str());
    res.lines.push_back(std::to_string(folds.size()) + "-fold mean macro F1 " + fmt4(mean));
    return res;
}

CommandResult cmd_grid(const RunConfig& cfg) {
    LoadedDataset ds = load_dataset(cfg);
    if (ds.rows.empty()) throw ValidationError("grid: labelled dataset is empty");

    GridSpec grid;
    grid.nb_alphas = cfg.grid_nb_alphas;
    grid.lr_lambdas = cfg.grid_lr_lambdas;
    SplitSpec split{cfg.train_fraction, cfg.stage_seed("split")};
    std::optional<CvSpec> cv;
    if (cfg.grid_use_cv) cv = CvSpec{cfg.cv_k, cfg.stage_seed("cv")};

    auto results = grid_search(grid, ds.data, split, cv);

    std::ostringstream out;
    out << "rank,vectorizer,model,nb_alpha,lr_lambda,mean_macro_f1,failed,error\n";
    for (std::size_t r = 0; r < results.size(); ++r) {
        const auto& g = results[r];
        out << r << ',' << (g.cell.weighting == Weighting::Count ? "count" : "tfidf") << ','
            << g.cell.model_kind << ','
            << (g.cell.model_kind == "nb" ? fmt(g.cell.nb_alpha) : "") << ','
            << (g.cell.model_kind == "lr" ? fmt(g.cell.lr.lambda) : "") << ','
            << fmt(g.mean_macro_f1) << ',' << (g.failed ? "true" : "false") << ','
            << csv::quote(g.error) << '\n';
    }
    fs::path dir = prepare_out_dir(cfg);
    write_file(dir / "grid.csv", out.str());

    const auto& best = results.front();
    return {{"best cell: " +
             std::string(best.cell.weighting == Weighting::Count ? "count" : "tfidf") + " " +
             best.cell.model_kind + ", mean macro F1 " + fmt4(best.mean_macro_f1)}};
}

CommandResult cmd_signal(const RunConfig& cfg) {
    LoadedModel lm = load_model_files(cfg);
    RunConfig eff = cfg;
    eff.scheme = scheme_string(lm.artifact.scheme);
    eff.alignment = lm.artifact.alignment == Alignment::SameDay ? "same-day" : "prev-day";
    eff.tz_offset = lm.artifact.tz_offset;
    LoadedDataset ds = load_dataset(eff);
    if (ds.rows.empty()) throw ValidationError("signal: labelled dataset is empty");

    // training rows under the artifact's split, for overlap reporting
    SplitSpec split{lm.artifact.train_fraction, lm.artifact.split_seed};
    std::vector<std::size_t> train, test;
    train_test_split(ds.rows.size(), split, train, test);
    std::vector<bool> in_train(ds.rows.size(), false);
    for (auto i : train) in_train[i] = true;

    std::map<std::string, std::vector<std::size_t>> by_symbol;
    for (std::size_t i = 0; i < ds.rows.size(); ++i)
        by_symbol[ds.rows[i].raw.symbol].push_back(i);

    std::ostringstream out;
    out << "symbol,decision,precision,tau,window_start,window_end,messages,train_overlap\n";
    CommandResult res;
    int K = ds.data.num_classes;
    for (const auto& [symbol, indices] : by_symbol) {
        Date last = ds.rows[indices.front()].date;
        for (auto i : indices) last = std::max(last, ds.rows[i].date);
        Date first = last - 13;  // final two weeks, both endpoints included

        std::vector<std::size_t> window;
        for (auto i : indices)
            if (ds.rows[i].date >= first && ds.rows[i].date <= last) window.push_back(i);
        if (window.empty()) {
            res.lines.push_back(symbol + ": no messages in final two-week window, skipped");
            continue;
        }

        TokenDocs docs;
        std::vector<int> y_true;
        std::size_t overlap = 0;
        for (auto i : window) {
            docs.push_back(ds.data.docs[i]);
            y_true.push_back(ds.data.labels[i]);
            if (in_train[i]) ++overlap;
        }
        DocTermMatrix X = vectorize(docs, lm.vocab, lm.artifact.weighting);
        std::vector<int> y_pred;
        for (std::size_t i = 0; i < X.n_rows; ++i)
            y_pred.push_back(lm.artifact.predict(X, i).label);

        ClassReport report = class_report(confusion(y_true, y_pred, K));
        std::string window_desc = first.to_iso() + ".." + last.to_iso();
        Signal signal = investment_signal(report, cfg.tau, window_desc);

        out << symbol << ',' << (signal.decision == Decision::Invest ? "invest" : "avoid")
            << ',' << fmt(signal.positive_precision) << ',' << fmt(signal.tau) << ','
            << first.to_iso() << ',' << last.to_iso() << ',' << window.size() << ','
            << overlap << '\n';
        res.lines.push_back(symbol + " " + window_desc + " precision=" +
                            fmt4(signal.positive_precision) + " (train overlap " +
                            std::to_string(overlap) + "/" + std::to_string(window.size()) +
                            ")");
        res.lines.push_back(signal.message());
    }
    fs::path dir = prepare_out_dir(cfg);
    write_file(dir / "signal.csv", out.str());
    return res;
}

CommandResult cmd_report(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    if (!fs::is_directory(dir)) throw ValidationError("report: no such directory " + cfg.out_dir);
    prepare_out_dir(cfg);

    std::vector<fs::path> runs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory()) runs.push_back(entry.path());
    std::sort(runs.begin(), runs.end());

    std::ostringstream cmp, bal;
    cmp << "run,model,vectorizer,scheme,alignment,macro_f1,accuracy\n";
    bal << "run,label,label_int,count,proportion\n";
    std::size_t eval_runs = 0, balance_runs = 0;
    for (const auto& run : runs) {
        if (!fs::exists(run / "config.txt")) continue;
        RunConfig rc = RunConfig::from_file((run / "config.txt").string());
        if (fs::exists(run / "report.csv")) {
            std::ifstream in(run / "report.csv");
            std::vector<std::string> f;
            std::string macro_f1, accuracy;
            while (csv::read_record(in, f)) {
                if (f.size() == 5 && f[0] == "macro_avg") macro_f1 = f[3];
                if (f.size() == 5 && f[0] == "accuracy") accuracy = f[3];
            }
            cmp << run.filename().string() << ',' << rc.model << ',' << rc.vectorizer << ','
                << rc.scheme << ',' << rc.alignment << ',' << macro_f1 << ',' << accuracy
                << '\n';
            ++eval_runs;
        }
        if (fs::exists(run / "balance.csv")) {
            std::ifstream in(run / "balance.csv");
            std::vector<std::string> f;
            bool header = true;
            while (csv::read_record(in, f)) {
                if (header) {
                    header = false;
                    continue;
                }
                if (f.size() == 4 && f[0] != "excluded")
                    bal << run.filename().string() << ',' << csv::join(f) << '\n';
            }
            ++balance_runs;
        }
    }
    if (eval_runs == 0 && balance_runs == 0)
        throw ValidationError("report: no runs found under " + cfg.out_dir);

    write_file(dir / "comparison.csv", cmp.str());
    write_file(dir / "class_balance.csv", bal.str());
    return {{"aggregated " + std::to_string(eval_runs) + " eval runs and " +
             std::to_string(balance_runs) + " balance summaries"}};
}

}  // namespace stocklab
