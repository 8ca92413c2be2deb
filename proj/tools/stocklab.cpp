// stocklab CLI: label financial messages from price movements, train and
// evaluate bag-of-words classifiers, and emit the invest/avoid signal.

#include <CLI11.hpp>

#include <iostream>

#include "stocklab/errors.hpp"
#include "stocklab/pipeline.hpp"

using stocklab::CommandResult;
using stocklab::RunConfig;

namespace {

struct FlagOverrides {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> keys;
};

void add_common(CLI::App* cmd, FlagOverrides& fo) {
    cmd->add_option("--config", fo.config_file, "key=value configuration file");
    auto track = [&fo](const std::string& key) {
        return [&fo, key](const std::string& v) { fo.keys.emplace_back(key, v); };
    };
    cmd->add_option_function<std::string>("--scheme", track("scheme"),
                                          "labelling scheme: binary|pct2|pct3");
    cmd->add_option_function<std::string>("--alignment", track("alignment"),
                                          "day alignment: same-day|prev-day");
    cmd->add_option_function<std::string>("--vectorizer", track("vectorizer"),
                                          "feature weighting: count|tfidf");
    cmd->add_option_function<std::string>("--model", track("model"), "model kind: nb|lr");
    cmd->add_option_function<std::string>("--seed", track("seed"), "global random seed");
    cmd->add_option_function<std::string>("--tau", track("tau"),
                                          "precision threshold for the signal");
    cmd->add_option_function<std::string>("--tz-offset", track("tz_offset"),
                                          "timezone shift in hours for message dates");
    cmd->add_option_function<std::string>("--out-dir", track("out_dir"), "output directory");
    cmd->add_option_function<std::string>("--messages", track("messages_csv"),
                                          "StockTwits-style messages CSV");
    cmd->add_option_function<std::string>("--ohlc", track("ohlc_csv"), "OHLC prices CSV");
    cmd->add_option_function<std::string>("--ohlc-date-format", track("ohlc_date_format"),
                                          "OHLC date format: iso|dmy");
    cmd->add_option_function<std::string>("--labelled", track("labelled_csv"),
                                          "labelled dataset CSV");
    cmd->add_option_function<std::string>("--model-file", track("model_file"),
                                          "model artifact path");
    cmd->add_option_function<std::string>("--vocab-file", track("vocab_file"),
                                          "vocabulary sidecar path");
    cmd->add_option_function<std::string>("--symbol", track("symbol"), "ticker symbol");
    cmd->add_option_function<std::string>("--start", track("start_date"),
                                          "fetch range start (ISO)");
    cmd->add_option_function<std::string>("--end", track("end_date"), "fetch range end (ISO)");
    cmd->add_option_function<std::string>("--endpoint", track("endpoint"),
                                          "OHLC fetch endpoint base URL");
    cmd->add_option_function<std::string>("--set", track(""),
                                          "extra key=value override (repeatable)")
        ->take_all();
}

RunConfig resolve(const FlagOverrides& fo) {
    RunConfig cfg;
    if (!fo.config_file.empty()) cfg = RunConfig::from_file(fo.config_file);
    for (const auto& [key, value] : fo.keys) {
        if (!key.empty()) {
            cfg.set(key, value);
        } else {
            auto eq = value.find('=');
            if (eq == std::string::npos)
                throw stocklab::ValidationError("--set expects key=value, got '" + value +
                                                "'");
            cfg.set(value.substr(0, eq), value.substr(eq + 1));
        }
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stock message labelling and classification pipeline"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        CommandResult (*run)(const RunConfig&);
    };
    const Sub subs[] = {
        {"fetch", "download OHLC CSV from a configured endpoint", stocklab::cmd_fetch},
        {"label", "label messages from price movements", stocklab::cmd_label},
        {"prep", "normalize message text into token lines", stocklab::cmd_prep},
        {"train", "train a classifier on the labelled dataset", stocklab::cmd_train},
        {"eval", "evaluate a trained model on its held-out split", stocklab::cmd_eval},
        {"cv", "k-fold cross-validation of the configured model", stocklab::cmd_cv},
        {"grid", "grid search over vectorizers, models and hyperparameters",
         stocklab::cmd_grid},
        {"signal", "emit the precision-thresholded invest/avoid signal",
         stocklab::cmd_signal},
        {"report", "aggregate eval runs into comparison tables", stocklab::cmd_report},
    };

    std::vector<FlagOverrides> overrides(std::size(subs));
    std::vector<CLI::App*> cmds;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(cmd, overrides[i]);
        cmds.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(subs); ++i) {
        if (!cmds[i]->parsed()) continue;
        try {
            CommandResult result = subs[i].run(resolve(overrides[i]));
            for (const auto& line : result.lines) std::cout << line << '\n';
            return 0;
        } catch (const stocklab::ValidationError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    return 1;
}
