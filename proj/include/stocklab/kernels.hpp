#pragma once

#include <cstddef>
#include <vector>

#include "stocklab/features.hpp"

namespace stocklab {

// Column-major companion of DocTermMatrix, used by the column-parallel
// gradient kernel.
struct CscMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> col_ptr;  // size n_cols + 1
    std::vector<std::size_t> row;
    std::vector<double> val;
};

CscMatrix to_csc(const DocTermMatrix& m);

// Logistic-regression weights: rows x (V+1), bias in the last column.
// One row means binary sigmoid over labels {0,1}; otherwise softmax with
// one row per class.
using WeightMatrix = std::vector<std::vector<double>>;

namespace kernels {

// Hot loops in two variants. `par` is the OpenMP production path with a
// fixed reduction order, so results are identical across thread counts.
// `serial` is the plain reference kept for tests and the benchmark.

namespace serial {

std::vector<std::vector<std::pair<int, double>>> vectorize_rows(
    const TokenDocs& docs, const Vocabulary& vocab, Weighting weighting);

// Regularized mean cross-entropy and its gradient. `csc` is ignored here.
void lr_loss_grad(const DocTermMatrix& X, const CscMatrix& csc,
                  const std::vector<int>& y, const WeightMatrix& W, int num_classes,
                  double lambda, double& loss, WeightMatrix& grad);

}  // namespace serial

namespace par {

std::vector<std::vector<std::pair<int, double>>> vectorize_rows(
    const TokenDocs& docs, const Vocabulary& vocab, Weighting weighting);

void lr_loss_grad(const DocTermMatrix& X, const CscMatrix& csc,
                  const std::vector<int>& y, const WeightMatrix& W, int num_classes,
                  double lambda, double& loss, WeightMatrix& grad);

}  // namespace par

// Per-row class scores (dense rows x classes, bias included); shared helper.
std::vector<double> scores_row(const DocTermMatrix& X, std::size_t row,
                               const WeightMatrix& W);

}  // namespace kernels
}  // namespace stocklab
