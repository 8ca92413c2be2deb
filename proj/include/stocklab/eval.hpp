#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stocklab/features.hpp"
#include "stocklab/models.hpp"

namespace stocklab {

struct ConfusionMatrix {
    int num_classes = 0;
    std::vector<std::int64_t> counts;  // row-major, rows = true class

    std::int64_t& at(int truth, int pred) {
        return counts[static_cast<std::size_t>(truth * num_classes + pred)];
    }
    std::int64_t at(int truth, int pred) const {
        return counts[static_cast<std::size_t>(truth * num_classes + pred)];
    }
    std::int64_t total() const;
};

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          int num_classes);

struct ClassReport {
    std::vector<double> precision, recall, f1;
    std::vector<std::int64_t> support;
    double accuracy = 0.0;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
    std::int64_t total = 0;
    int zero_division_warnings = 0;  // empty columns / 0-0 F1 counted, metric set to 0
};

ClassReport class_report(const ConfusionMatrix& m);

// Table-9-shaped CSV: per-class rows then accuracy/macro/weighted rows.
void write_report_csv(const ClassReport& r, std::ostream& out);

struct SplitSpec {
    double train_fraction = 0.9;
    std::uint64_t seed = 0;
};

// Seeded uniform shuffle of 0..n-1; first ceil(train_fraction*n) indices
// train, rest test.
void train_test_split(std::size_t n, const SplitSpec& spec, std::vector<std::size_t>& train,
                      std::vector<std::size_t>& test);

struct CvSpec {
    int k = 5;
    std::uint64_t seed = 0;
};

struct FoldPair {
    std::vector<std::size_t> train, test;
};

// Seeded shuffle then k contiguous test chunks, sizes differing by at most 1.
std::vector<FoldPair> kfold(std::size_t n, const CvSpec& spec);

// One grid cell: vectorizer x model kind x hyperparameters.
struct GridCell {
    Weighting weighting = Weighting::Count;
    std::string model_kind;  // "nb" | "lr"
    double nb_alpha = 1.0;
    NbVariant nb_variant = NbVariant::Multinomial;
    LrConfig lr;
};

struct GridSpec {
    std::vector<Weighting> weightings = {Weighting::Count, Weighting::TfIdf};
    std::vector<std::string> model_kinds = {"nb", "lr"};
    std::vector<double> nb_alphas = {1.0};
    std::vector<double> lr_lambdas = {1.0};

    // Cartesian product in declaration order: weighting, model, hyperparameter.
    std::vector<GridCell> enumerate() const;
};

struct GridResult {
    GridCell cell;
    double mean_macro_f1 = 0.0;
    bool failed = false;
    std::string error;
};

// Tokenized documents plus dense class labels; the unit grid_search scores.
struct Dataset {
    TokenDocs docs;
    std::vector<int> labels;
    int num_classes = 2;
};

// Trains and scores one cell on explicit train/test index sets. Vocabulary
// and df are fit on the train side only.
double score_cell(const GridCell& cell, const Dataset& data,
                  const std::vector<std::size_t>& train,
                  const std::vector<std::size_t>& test,
                  std::size_t min_df = 1);

// Mean macro-F1 per cell, across folds when cv is given, else on the single
// held-out split. Results sorted best-first; ties keep enumeration order.
std::vector<GridResult> grid_search(const GridSpec& grid, const Dataset& data,
                                    const SplitSpec& split,
                                    const std::optional<CvSpec>& cv);

enum class Decision { Invest, Avoid };

struct Signal {
    Decision decision = Decision::Avoid;
    double positive_precision = 0.0;
    double tau = 0.75;
    std::string window;  // evaluation window descriptor

    // exactly "Invest!" or "Avoid investing!"
    std::string message() const;
};

// Invest iff positive-class precision >= tau. The positive class is the
// last index (codec value 1).
Signal investment_signal(const ClassReport& report, double tau,
                         const std::string& window = "");

}  // namespace stocklab
