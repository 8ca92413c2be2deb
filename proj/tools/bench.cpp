// Micro-benchmark comparing the serial reference kernels against the
// OpenMP production kernels on synthetic corpora.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stocklab/features.hpp"
#include "stocklab/kernels.hpp"

using namespace stocklab;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_docs = argc > 1 ? std::stoull(argv[1]) : 20000;
    std::size_t vocab_words = 2000;
    std::size_t doc_len = 12;

    std::mt19937_64 rng(42);
    TokenDocs docs(n_docs);
    for (auto& doc : docs) {
        std::size_t len = 4 + rng() % doc_len;
        for (std::size_t t = 0; t < len; ++t)
            doc.push_back("w" + std::to_string(rng() % vocab_words));
    }
    Vocabulary vocab = build_vocab(docs);
    std::vector<int> labels(n_docs);
    for (auto& y : labels) y = static_cast<int>(rng() % 2);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled at build time\n");
#endif
    std::printf("corpus: %zu docs, %d vocabulary tokens\n\n", n_docs, vocab.size());

    double t_ser = time_best_of(3, [&] {
        auto rows = kernels::serial::vectorize_rows(docs, vocab, Weighting::TfIdf);
        (void)rows;
    });
    double t_par = time_best_of(3, [&] {
        auto rows = kernels::par::vectorize_rows(docs, vocab, Weighting::TfIdf);
        (void)rows;
    });
    std::printf("tfidf vectorize   serial %8.4fs   omp %8.4fs   speedup %.2fx\n", t_ser,
                t_par, t_ser / t_par);

    DocTermMatrix X = tfidf_vectorize(docs, vocab);
    CscMatrix csc = to_csc(X);
    WeightMatrix W(1, std::vector<double>(X.n_cols + 1, 0.01));
    WeightMatrix grad;
    double loss = 0;
    double g_ser = time_best_of(3, [&] {
        kernels::serial::lr_loss_grad(X, csc, labels, W, 2, 1.0, loss, grad);
    });
    double loss_serial = loss;
    double g_par = time_best_of(3, [&] {
        kernels::par::lr_loss_grad(X, csc, labels, W, 2, 1.0, loss, grad);
    });
    std::printf("lr loss+gradient  serial %8.4fs   omp %8.4fs   speedup %.2fx\n", g_ser,
                g_par, g_ser / g_par);
    std::printf("\nloss agreement: serial %.17g vs omp %.17g (|diff| %.3g)\n", loss_serial,
                loss, std::abs(loss_serial - loss));
    return 0;
}
