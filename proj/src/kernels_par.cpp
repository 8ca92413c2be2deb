// OpenMP kernels. Reductions run over fixed-size row blocks with a serial
// combine in block order, so the floating-point result does not depend on
// the thread count.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdint>

#include "kernels_detail.hpp"
#include "stocklab/errors.hpp"

namespace stocklab {
namespace kernels {
namespace par {

namespace {
constexpr std::size_t kBlock = 1024;
}

std::vector<std::vector<std::pair<int, double>>> vectorize_rows(
    const TokenDocs& docs, const Vocabulary& vocab, Weighting weighting) {
    std::vector<std::vector<std::pair<int, double>>> rows(docs.size());
    const std::int64_t n = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] =
            detail::one_row(docs[static_cast<std::size_t>(i)], vocab, weighting);
    return rows;
}

void lr_loss_grad(const DocTermMatrix& X, const CscMatrix& csc, const std::vector<int>& y,
                  const WeightMatrix& W, int num_classes, double lambda, double& loss,
                  WeightMatrix& grad) {
    if (X.n_rows != y.size()) throw ValidationError("lr_loss_grad: rows != labels");
    if (csc.n_rows != X.n_rows || csc.n_cols != X.n_cols)
        throw ValidationError("lr_loss_grad: CSC shape mismatch");
    const std::size_t n = X.n_rows;
    const std::size_t rows = W.size();
    const std::size_t width = X.n_cols + 1;
    const double inv_n = 1.0 / static_cast<double>(n);

    // pass 1: per-row errors, blockwise loss partials
    std::vector<double> err(n * rows);
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> loss_partial(n_blocks, 0.0);
    std::vector<double> bias_partial(n_blocks * rows, 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
        std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        std::size_t hi = std::min(n, lo + kBlock);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            acc += detail::row_loss_err(X, i, W, y[i], &err[i * rows]);
            for (std::size_t c = 0; c < rows; ++c)
                bias_partial[static_cast<std::size_t>(b) * rows + c] += err[i * rows + c];
        }
        loss_partial[static_cast<std::size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double v : loss_partial) total += v;

    // pass 2: grad columns, one column per task; accumulation order within a
    // column follows the CSC layout and is fixed
    grad.assign(rows, std::vector<double>(width, 0.0));
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(X.n_cols); ++j) {
        std::size_t col = static_cast<std::size_t>(j);
        for (std::size_t c = 0; c < rows; ++c) {
            double acc = 0.0;
            for (std::size_t k = csc.col_ptr[col]; k < csc.col_ptr[col + 1]; ++k)
                acc += csc.val[k] * err[csc.row[k] * rows + c];
            grad[c][col] = acc * inv_n + lambda * inv_n * W[c][col];
        }
    }
    for (std::size_t c = 0; c < rows; ++c) {
        double acc = 0.0;
        for (std::size_t b = 0; b < n_blocks; ++b) acc += bias_partial[b * rows + c];
        grad[c][X.n_cols] = acc * inv_n;
    }

    double reg = 0.0;
    for (std::size_t c = 0; c < rows; ++c)
        for (std::size_t j = 0; j < X.n_cols; ++j) reg += W[c][j] * W[c][j];
    loss = total * inv_n + 0.5 * lambda * inv_n * reg;
    (void)num_classes;
}

}  // namespace par
}  // namespace kernels
}  // namespace stocklab
