#include "stocklab/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "stocklab/errors.hpp"

namespace stocklab {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += fmt_double(v[i]);
    }
    return out;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ';'))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError("config: bad boolean '" + v + "'");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

LabelScheme RunConfig::label_scheme() const {
    LabelScheme s;
    if (scheme == "binary") s.kind = SchemeKind::Binary;
    else if (scheme == "pct2") s.kind = SchemeKind::PctTwo;
    else if (scheme == "pct3") s.kind = SchemeKind::PctThree;
    else throw ValidationError("config: unknown scheme '" + scheme + "'");
    s.threshold = threshold;
    if (s.kind != SchemeKind::Binary && !(s.threshold > 0))
        throw ValidationError("config: threshold must be > 0 for pct schemes");
    return s;
}

AlignmentMode RunConfig::alignment_mode() const {
    AlignmentMode a;
    if (alignment == "same-day") a.mode = Alignment::SameDay;
    else if (alignment == "prev-day") a.mode = Alignment::PrevDay;
    else throw ValidationError("config: unknown alignment '" + alignment + "'");
    a.prev_day_open_reference = prev_day_open_reference;
    return a;
}

PipelineConfig RunConfig::pipeline_config() const {
    PipelineConfig p = PipelineConfig::defaults();
    p.drop_retweets = prep_drop_retweets;
    p.remove_urls = prep_remove_urls;
    p.remove_mentions = prep_remove_mentions;
    p.demojize = prep_demojize;
    p.normalize_cashtags = prep_cashtags;
    p.segment_hashtags = prep_hashtags;
    p.expand_contractions = prep_contractions;
    p.squeeze_repeats = prep_squeeze;
    p.strip_punctuation = prep_punctuation;
    p.fold_case = prep_fold_case;
    p.remove_stopwords = prep_stopwords;
    p.repeat_limit = prep_repeat_limit;
    return p;
}

Weighting RunConfig::weighting() const {
    if (vectorizer == "count") return Weighting::Count;
    if (vectorizer == "tfidf") return Weighting::TfIdf;
    throw ValidationError("config: unknown vectorizer '" + vectorizer + "'");
}

DateFormat RunConfig::date_format() const {
    if (ohlc_date_format == "iso") return DateFormat::Iso;
    if (ohlc_date_format == "dmy") return DateFormat::DayMonthYear;
    throw ValidationError("config: unknown ohlc_date_format '" + ohlc_date_format + "'");
}

std::uint64_t RunConfig::stage_seed(const std::string& stage) const {
    return splitmix(seed ^ fnv1a(stage));
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "messages_csv") messages_csv = value;
    else if (key == "ohlc_csv") ohlc_csv = value;
    else if (key == "labelled_csv") labelled_csv = value;
    else if (key == "model_file") model_file = value;
    else if (key == "vocab_file") vocab_file = value;
    else if (key == "out_dir") out_dir = value;
    else if (key == "endpoint") endpoint = value;
    else if (key == "symbol") symbol = value;
    else if (key == "start_date") start_date = value;
    else if (key == "end_date") end_date = value;
    else if (key == "ohlc_date_format") ohlc_date_format = value;
    else if (key == "scheme") scheme = value;
    else if (key == "alignment") alignment = value;
    else if (key == "prev_day_open_reference") prev_day_open_reference = parse_bool(value);
    else if (key == "threshold") threshold = std::stod(value);
    else if (key == "tz_offset") tz_offset = std::stoi(value);
    else if (key == "prep_drop_retweets") prep_drop_retweets = parse_bool(value);
    else if (key == "prep_remove_urls") prep_remove_urls = parse_bool(value);
    else if (key == "prep_remove_mentions") prep_remove_mentions = parse_bool(value);
    else if (key == "prep_demojize") prep_demojize = parse_bool(value);
    else if (key == "prep_cashtags") prep_cashtags = parse_bool(value);
    else if (key == "prep_hashtags") prep_hashtags = parse_bool(value);
    else if (key == "prep_contractions") prep_contractions = parse_bool(value);
    else if (key == "prep_squeeze") prep_squeeze = parse_bool(value);
    else if (key == "prep_punctuation") prep_punctuation = parse_bool(value);
    else if (key == "prep_fold_case") prep_fold_case = parse_bool(value);
    else if (key == "prep_stopwords") prep_stopwords = parse_bool(value);
    else if (key == "prep_repeat_limit") prep_repeat_limit = std::stoi(value);
    else if (key == "vectorizer") vectorizer = value;
    else if (key == "min_df") min_df = std::stoull(value);
    else if (key == "max_features") max_features = std::stoull(value);
    else if (key == "model") model = value;
    else if (key == "nb_variant") nb_variant = value;
    else if (key == "nb_alpha") nb_alpha = std::stod(value);
    else if (key == "lr_step") lr_step = std::stod(value);
    else if (key == "lr_lambda") lr_lambda = std::stod(value);
    else if (key == "lr_tol") lr_tol = std::stod(value);
    else if (key == "lr_max_iters") lr_max_iters = std::stoull(value);
    else if (key == "train_fraction") train_fraction = std::stod(value);
    else if (key == "cv_k") cv_k = std::stoi(value);
    else if (key == "grid_use_cv") grid_use_cv = parse_bool(value);
    else if (key == "grid_nb_alphas") grid_nb_alphas = parse_list(value);
    else if (key == "grid_lr_lambdas") grid_lr_lambdas = parse_list(value);
    else if (key == "tau") tau = std::stod(value);
    else if (key == "seed") seed = std::stoull(value);
    else throw ValidationError("config: unknown key '" + key + "'");
}

void RunConfig::save(std::ostream& out) const {
    std::map<std::string, std::string> kv;
    kv["messages_csv"] = messages_csv;
    kv["ohlc_csv"] = ohlc_csv;
    kv["labelled_csv"] = labelled_csv;
    kv["model_file"] = model_file;
    kv["vocab_file"] = vocab_file;
    kv["out_dir"] = out_dir;
    kv["endpoint"] = endpoint;
    kv["symbol"] = symbol;
    kv["start_date"] = start_date;
    kv["end_date"] = end_date;
    kv["ohlc_date_format"] = ohlc_date_format;
    kv["scheme"] = scheme;
    kv["alignment"] = alignment;
    kv["prev_day_open_reference"] = prev_day_open_reference ? "true" : "false";
    kv["threshold"] = fmt_double(threshold);
    kv["tz_offset"] = std::to_string(tz_offset);
    kv["prep_drop_retweets"] = prep_drop_retweets ? "true" : "false";
    kv["prep_remove_urls"] = prep_remove_urls ? "true" : "false";
    kv["prep_remove_mentions"] = prep_remove_mentions ? "true" : "false";
    kv["prep_demojize"] = prep_demojize ? "true" : "false";
    kv["prep_cashtags"] = prep_cashtags ? "true" : "false";
    kv["prep_hashtags"] = prep_hashtags ? "true" : "false";
    kv["prep_contractions"] = prep_contractions ? "true" : "false";
    kv["prep_squeeze"] = prep_squeeze ? "true" : "false";
    kv["prep_punctuation"] = prep_punctuation ? "true" : "false";
    kv["prep_fold_case"] = prep_fold_case ? "true" : "false";
    kv["prep_stopwords"] = prep_stopwords ? "true" : "false";
    kv["prep_repeat_limit"] = std::to_string(prep_repeat_limit);
    kv["resource_version"] = resource_version();
    kv["vectorizer"] = vectorizer;
    kv["min_df"] = std::to_string(min_df);
    kv["max_features"] = std::to_string(max_features);
    kv["model"] = model;
    kv["nb_variant"] = nb_variant;
    kv["nb_alpha"] = fmt_double(nb_alpha);
    kv["lr_step"] = fmt_double(lr_step);
    kv["lr_lambda"] = fmt_double(lr_lambda);
    kv["lr_tol"] = fmt_double(lr_tol);
    kv["lr_max_iters"] = std::to_string(lr_max_iters);
    kv["train_fraction"] = fmt_double(train_fraction);
    kv["cv_k"] = std::to_string(cv_k);
    kv["grid_use_cv"] = grid_use_cv ? "true" : "false";
    kv["grid_nb_alphas"] = fmt_list(grid_nb_alphas);
    kv["grid_lr_lambdas"] = fmt_list(grid_lr_lambdas);
    kv["tau"] = fmt_double(tau);
    kv["seed"] = std::to_string(seed);
    for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

RunConfig RunConfig::load(std::istream& in) {
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected key=value");
        std::string key = line.substr(0, eq);
        if (key == "resource_version") continue;  // informational
        cfg.set(key, line.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    return load(in);
}

}  // namespace stocklab
