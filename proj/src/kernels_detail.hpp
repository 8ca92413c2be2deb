#pragma once

// Shared per-row arithmetic for the serial and OpenMP kernel variants.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "stocklab/features.hpp"
#include "stocklab/kernels.hpp"

namespace stocklab {
namespace kernels {
namespace detail {

inline std::vector<std::pair<int, double>> one_row(const std::vector<std::string>& doc,
                                                   const Vocabulary& vocab,
                                                   Weighting weighting) {
    std::map<int, double> counts;
    for (const auto& token : doc) {
        int idx = vocab.lookup(token);
        if (idx >= 0) counts[idx] += 1.0;
    }
    std::vector<std::pair<int, double>> row(counts.begin(), counts.end());
    if (weighting == Weighting::TfIdf) {
        double norm_sq = 0.0;
        for (auto& [idx, v] : row) {
            v *= idf(vocab, idx);
            norm_sq += v * v;
        }
        if (norm_sq > 0.0) {
            double inv = 1.0 / std::sqrt(norm_sq);
            for (auto& [idx, v] : row) v *= inv;
        }
    }
    return row;
}

// Cross-entropy and error vector for one row. `err` has W.size() entries
// (one for binary sigmoid, num_classes for softmax).
inline double row_loss_err(const DocTermMatrix& X, std::size_t row, const WeightMatrix& W,
                           int label, double* err) {
    std::vector<double> s = scores_row(X, row, W);
    if (W.size() == 1) {
        double z = s[0];
        // ln(1 + e^z) - y z, computed stably
        double loss = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) -
                      (label == 1 ? z : 0.0);
        double p = 1.0 / (1.0 + std::exp(-z));
        err[0] = p - (label == 1 ? 1.0 : 0.0);
        return loss;
    }
    double m = *std::max_element(s.begin(), s.end());
    double sum = 0.0;
    for (double v : s) sum += std::exp(v - m);
    double lse = m + std::log(sum);
    for (std::size_t c = 0; c < s.size(); ++c) {
        double p = std::exp(s[c] - lse);
        err[c] = p - (static_cast<int>(c) == label ? 1.0 : 0.0);
    }
    return lse - s[static_cast<std::size_t>(label)];
}

}  // namespace detail
}  // namespace kernels
}  // namespace stocklab
