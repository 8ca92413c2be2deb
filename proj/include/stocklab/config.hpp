#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stocklab/eval.hpp"
#include "stocklab/labelling.hpp"
#include "stocklab/textprep.hpp"

namespace stocklab {

// Resolved run configuration. Serialized as sorted `key=value` lines; the
// snapshot written beside each run's outputs reproduces the run alone.
struct RunConfig {
    // inputs
    std::string messages_csv;
    std::string ohlc_csv;
    std::string labelled_csv;
    std::string model_file;
    std::string vocab_file;
    std::string out_dir = ".";

    // fetch
    std::string endpoint;
    std::string symbol;
    std::string start_date;  // ISO
    std::string end_date;
    std::string ohlc_date_format = "iso";  // "iso" | "dmy"

    // labelling
    std::string scheme = "binary";  // binary | pct2 | pct3
    std::string alignment = "same-day";  // same-day | prev-day
    bool prev_day_open_reference = false;
    double threshold = 0.5;
    int tz_offset = 0;

    // preprocessing
    bool prep_drop_retweets = true;
    bool prep_remove_urls = true;
    bool prep_remove_mentions = true;
    bool prep_demojize = true;
    bool prep_cashtags = true;
    bool prep_hashtags = true;
    bool prep_contractions = true;
    bool prep_squeeze = true;
    bool prep_punctuation = true;
    bool prep_fold_case = true;
    bool prep_stopwords = true;
    int prep_repeat_limit = 2;

    // features
    std::string vectorizer = "tfidf";  // count | tfidf
    std::uint64_t min_df = 1;
    std::uint64_t max_features = 0;  // 0 = unset

    // model
    std::string model = "nb";  // nb | lr
    std::string nb_variant = "multinomial";  // multinomial | bernoulli
    double nb_alpha = 1.0;
    double lr_step = 0.1;
    double lr_lambda = 1.0;
    double lr_tol = 1e-6;
    std::uint64_t lr_max_iters = 1000;

    // evaluation
    double train_fraction = 0.9;
    int cv_k = 5;
    bool grid_use_cv = false;
    std::vector<double> grid_nb_alphas = {1.0};
    std::vector<double> grid_lr_lambdas = {1.0};
    double tau = 0.75;
    std::uint64_t seed = 0;

    LabelScheme label_scheme() const;
    AlignmentMode alignment_mode() const;
    PipelineConfig pipeline_config() const;
    Weighting weighting() const;
    DateFormat date_format() const;

    // Per-stage sub-seed derived from the global seed, so changing one
    // stage's consumer does not perturb another's stream.
    std::uint64_t stage_seed(const std::string& stage) const;

    void save(std::ostream& out) const;
    static RunConfig load(std::istream& in);
    // Applies `key=value` lines from a file over the defaults.
    static RunConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
};

}  // namespace stocklab
