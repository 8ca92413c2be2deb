#include "stocklab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "stocklab/errors.hpp"

namespace stocklab {

namespace {

// splitmix64; stable across platforms, unlike std::shuffle
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i)
        std::swap(idx[i - 1], idx[rng.next() % i]);
    return idx;
}

}  // namespace

std::int64_t ConfusionMatrix::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          int num_classes) {
    if (y_true.size() != y_pred.size())
        throw ValidationError("confusion: length mismatch");
    ConfusionMatrix m;
    m.num_classes = num_classes;
    m.counts.assign(static_cast<std::size_t>(num_classes) * num_classes, 0);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        int t = y_true[i], p = y_pred[i];
        if (t < 0 || t >= num_classes || p < 0 || p >= num_classes)
            throw ValidationError("confusion: label out of range at sample " +
                                  std::to_string(i));
        ++m.at(t, p);
    }
    return m;
}

ClassReport class_report(const ConfusionMatrix& m) {
    const int K = m.num_classes;
    ClassReport r;
    r.total = m.total();
    if (r.total == 0) throw ValidationError("class_report: empty confusion matrix");

    std::int64_t trace = 0;
    for (int c = 0; c < K; ++c) {
        std::int64_t row_sum = 0, col_sum = 0;
        for (int j = 0; j < K; ++j) {
            row_sum += m.at(c, j);
            col_sum += m.at(j, c);
        }
        std::int64_t diag = m.at(c, c);
        trace += diag;
        double prec = 0.0, rec = 0.0, f1 = 0.0;
        if (col_sum > 0) prec = static_cast<double>(diag) / static_cast<double>(col_sum);
        else ++r.zero_division_warnings;
        if (row_sum > 0) rec = static_cast<double>(diag) / static_cast<double>(row_sum);
        else ++r.zero_division_warnings;
        if (prec + rec > 0) f1 = 2.0 * prec * rec / (prec + rec);
        else ++r.zero_division_warnings;
        r.precision.push_back(prec);
        r.recall.push_back(rec);
        r.f1.push_back(f1);
        r.support.push_back(row_sum);
    }
    r.accuracy = static_cast<double>(trace) / static_cast<double>(r.total);
    for (int c = 0; c < K; ++c) {
        r.macro_precision += r.precision[c] / K;
        r.macro_recall += r.recall[c] / K;
        r.macro_f1 += r.f1[c] / K;
        double w = static_cast<double>(r.support[c]) / static_cast<double>(r.total);
        r.weighted_precision += w * r.precision[c];
        r.weighted_recall += w * r.recall[c];
        r.weighted_f1 += w * r.f1[c];
    }
    return r;
}

void write_report_csv(const ClassReport& r, std::ostream& out) {
    out << "row,precision,recall,f1,support\n";
    char buf[160];
    for (std::size_t c = 0; c < r.precision.size(); ++c) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%lld\n", c, r.precision[c],
                      r.recall[c], r.f1[c], static_cast<long long>(r.support[c]));
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "accuracy,,,%.17g,%lld\n", r.accuracy,
                  static_cast<long long>(r.total));
    out << buf;
    std::snprintf(buf, sizeof(buf), "macro_avg,%.17g,%.17g,%.17g,%lld\n", r.macro_precision,
                  r.macro_recall, r.macro_f1, static_cast<long long>(r.total));
    out << buf;
    std::snprintf(buf, sizeof(buf), "weighted_avg,%.17g,%.17g,%.17g,%lld\n",
                  r.weighted_precision, r.weighted_recall, r.weighted_f1,
                  static_cast<long long>(r.total));
    out << buf;
}

void train_test_split(std::size_t n, const SplitSpec& spec, std::vector<std::size_t>& train,
                      std::vector<std::size_t>& test) {
    if (n < 2) throw ValidationError("train_test_split: need n >= 2");
    auto idx = shuffled_indices(n, spec.seed);
    std::size_t n_train =
        static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(n)));
    n_train = std::min(n_train, n);
    train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
}

std::vector<FoldPair> kfold(std::size_t n, const CvSpec& spec) {
    if (spec.k < 2) throw ValidationError("kfold: need k >= 2");
    if (n < static_cast<std::size_t>(spec.k))
        throw ValidationError("kfold: need n >= k");
    auto idx = shuffled_indices(n, spec.seed);
    std::vector<FoldPair> folds;
    std::size_t k = static_cast<std::size_t>(spec.k);
    std::size_t base = n / k, extra = n % k;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t len = base + (f < extra ? 1 : 0);
        FoldPair fp;
        fp.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(pos),
                       idx.begin() + static_cast<std::ptrdiff_t>(pos + len));
        fp.train.reserve(n - len);
        fp.train.insert(fp.train.end(), idx.begin(),
                        idx.begin() + static_cast<std::ptrdiff_t>(pos));
        fp.train.insert(fp.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(pos + len),
                        idx.end());
        folds.push_back(std::move(fp));
        pos += len;
    }
    return folds;
}

std::vector<GridCell> GridSpec::enumerate() const {
    std::vector<GridCell> cells;
    for (Weighting w : weightings) {
        for (const auto& kind : model_kinds) {
            if (kind == "nb") {
                for (double a : nb_alphas) {
                    GridCell c;
                    c.weighting = w;
                    c.model_kind = kind;
                    c.nb_alpha = a;
                    cells.push_back(c);
                }
            } else {
                for (double l : lr_lambdas) {
                    GridCell c;
                    c.weighting = w;
                    c.model_kind = kind;
                    c.lr.lambda = l;
                    cells.push_back(c);
                }
            }
        }
    }
    return cells;
}

double score_cell(const GridCell& cell, const Dataset& data,
                  const std::vector<std::size_t>& train,
                  const std::vector<std::size_t>& test, std::size_t min_df) {
    TokenDocs train_docs, test_docs;
    std::vector<int> y_train, y_test;
    for (auto i : train) {
        train_docs.push_back(data.docs[i]);
        y_train.push_back(data.labels[i]);
    }
    for (auto i : test) {
        test_docs.push_back(data.docs[i]);
        y_test.push_back(data.labels[i]);
    }
    Vocabulary vocab = build_vocab(train_docs, min_df);
    DocTermMatrix X = cell.weighting == Weighting::Count
                          ? count_vectorize(train_docs, vocab)
                          : tfidf_vectorize(train_docs, vocab);
    DocTermMatrix Xt = cell.weighting == Weighting::Count
                           ? count_vectorize(test_docs, vocab)
                           : tfidf_vectorize(test_docs, vocab);
    std::vector<int> y_pred;
    y_pred.reserve(test.size());
    if (cell.model_kind == "nb") {
        auto model = train_nb(X, y_train, data.num_classes, cell.nb_alpha, cell.nb_variant);
        for (std::size_t i = 0; i < Xt.n_rows; ++i)
            y_pred.push_back(predict_nb(model, Xt, i).label);
    } else {
        auto model = train_lr(X, y_train, data.num_classes, cell.lr);
        for (std::size_t i = 0; i < Xt.n_rows; ++i)
            y_pred.push_back(predict_lr(model, Xt, i).label);
    }
    return class_report(confusion(y_test, y_pred, data.num_classes)).macro_f1;
}

std::vector<GridResult> grid_search(const GridSpec& grid, const Dataset& data,
                                    const SplitSpec& split,
                                    const std::optional<CvSpec>& cv) {
    auto cells = grid.enumerate();
    if (cells.empty()) throw ValidationError("grid_search: empty grid");

    std::vector<GridResult> results;
    for (const auto& cell : cells) {
        GridResult r;
        r.cell = cell;
        try {
            if (cv) {
                auto folds = kfold(data.docs.size(), *cv);
                double sum = 0.0;
                for (const auto& f : folds) sum += score_cell(cell, data, f.train, f.test);
                r.mean_macro_f1 = sum / static_cast<double>(folds.size());
            } else {
                std::vector<std::size_t> train, test;
                train_test_split(data.docs.size(), split, train, test);
                r.mean_macro_f1 = score_cell(cell, data, train, test);
            }
        } catch (const std::exception& e) {
            r.failed = true;
            r.error = e.what();
            r.mean_macro_f1 = -1.0;
        }
        results.push_back(std::move(r));
    }
    std::stable_sort(results.begin(), results.end(),
                     [](const GridResult& a, const GridResult& b) {
                         return a.mean_macro_f1 > b.mean_macro_f1;
                     });
    return results;
}

std::string Signal::message() const {
    return decision == Decision::Invest ? "Invest!" : "Avoid investing!";
}

Signal investment_signal(const ClassReport& report, double tau, const std::string& window) {
    if (report.precision.size() < 2)
        throw ValidationError("investment_signal: report lacks a positive class");
    Signal s;
    s.tau = tau;
    s.window = window;
    s.positive_precision = report.precision.back();  // positive = last class index
    s.decision = s.positive_precision >= tau ? Decision::Invest : Decision::Avoid;
    return s;
}

}  // namespace stocklab
