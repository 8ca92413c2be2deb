// Plain serial reference kernels. Kept unoptimized on purpose; the OpenMP
// variants in kernels_par.cpp are checked against these.

#include "kernels_detail.hpp"
#include "stocklab/errors.hpp"

namespace stocklab {

CscMatrix to_csc(const DocTermMatrix& m) {
    CscMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.col_ptr.assign(m.n_cols + 1, 0);
    for (int c : m.col) ++out.col_ptr[static_cast<std::size_t>(c) + 1];
    for (std::size_t j = 0; j < m.n_cols; ++j) out.col_ptr[j + 1] += out.col_ptr[j];
    out.row.resize(m.nnz());
    out.val.resize(m.nnz());
    std::vector<std::size_t> next(out.col_ptr.begin(), out.col_ptr.end() - 1);
    for (std::size_t r = 0; r < m.n_rows; ++r) {
        for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
            std::size_t slot = next[static_cast<std::size_t>(m.col[k])]++;
            out.row[slot] = r;
            out.val[slot] = m.val[k];
        }
    }
    return out;
}

namespace kernels {

std::vector<double> scores_row(const DocTermMatrix& X, std::size_t row,
                               const WeightMatrix& W) {
    std::vector<double> s(W.size());
    std::size_t bias = X.n_cols;
    for (std::size_t c = 0; c < W.size(); ++c) {
        double acc = W[c][bias];
        for (std::size_t k = X.row_ptr[row]; k < X.row_ptr[row + 1]; ++k)
            acc += W[c][static_cast<std::size_t>(X.col[k])] * X.val[k];
        s[c] = acc;
    }
    return s;
}

namespace serial {

std::vector<std::vector<std::pair<int, double>>> vectorize_rows(
    const TokenDocs& docs, const Vocabulary& vocab, Weighting weighting) {
    std::vector<std::vector<std::pair<int, double>>> rows(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i)
        rows[i] = detail::one_row(docs[i], vocab, weighting);
    return rows;
}

void lr_loss_grad(const DocTermMatrix& X, const CscMatrix&, const std::vector<int>& y,
                  const WeightMatrix& W, int num_classes, double lambda, double& loss,
                  WeightMatrix& grad) {
    if (X.n_rows != y.size()) throw ValidationError("lr_loss_grad: rows != labels");
    std::size_t n = X.n_rows;
    std::size_t rows = W.size();
    std::size_t width = X.n_cols + 1;
    grad.assign(rows, std::vector<double>(width, 0.0));
    std::vector<double> err(rows);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += detail::row_loss_err(X, i, W, y[i], err.data());
        for (std::size_t c = 0; c < rows; ++c) {
            for (std::size_t k = X.row_ptr[i]; k < X.row_ptr[i + 1]; ++k)
                grad[c][static_cast<std::size_t>(X.col[k])] += err[c] * X.val[k];
            grad[c][X.n_cols] += err[c];
        }
    }
    double reg = 0.0;
    double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < rows; ++c) {
        for (std::size_t j = 0; j < width; ++j) {
            grad[c][j] *= inv_n;
            if (j != X.n_cols) {  // bias unregularized
                grad[c][j] += lambda * inv_n * W[c][j];
                reg += W[c][j] * W[c][j];
            }
        }
    }
    loss = total * inv_n + 0.5 * lambda * inv_n * reg;
    (void)num_classes;
}

}  // namespace serial
}  // namespace kernels
}  // namespace stocklab
