#pragma once

#include <string>
#include <vector>

#include "stocklab/config.hpp"
#include "stocklab/eval.hpp"

namespace stocklab {

// Command implementations behind the CLI. Each writes its outputs plus a
// resolved config snapshot (config.txt) into cfg.out_dir and returns the
// lines to print. Deterministic given (inputs, config, seed).
struct CommandResult {
    std::vector<std::string> lines;
};

CommandResult cmd_fetch(const RunConfig& cfg);
CommandResult cmd_label(const RunConfig& cfg);
CommandResult cmd_prep(const RunConfig& cfg);
CommandResult cmd_train(const RunConfig& cfg);
CommandResult cmd_eval(const RunConfig& cfg);
CommandResult cmd_cv(const RunConfig& cfg);
CommandResult cmd_grid(const RunConfig& cfg);
CommandResult cmd_signal(const RunConfig& cfg);
CommandResult cmd_report(const RunConfig& cfg);

// Labelled CSV -> tokenized dataset with dense class labels; row order
// preserved. Shared by train/eval/cv/grid/signal.
struct LoadedDataset {
    Dataset data;
    std::vector<LabelledMessage> rows;
};

LoadedDataset load_dataset(const RunConfig& cfg);

}  // namespace stocklab
