#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace stocklab {

using TokenDocs = std::vector<std::vector<std::string>>;

// Token-to-column map with document frequencies. Indices are dense and
// assigned lexicographically.
struct Vocabulary {
    std::vector<std::string> tokens;       // lexicographic; index == position
    std::map<std::string, int> index;
    std::vector<std::size_t> df;           // per token
    std::size_t doc_count = 0;             // N of the fitting corpus

    int size() const { return static_cast<int>(tokens.size()); }
    int lookup(const std::string& token) const {
        auto it = index.find(token);
        return it == index.end() ? -1 : it->second;
    }
};

enum class Weighting { Count, TfIdf };

// Row-sparse document-term matrix (CSR). Count entries are occurrence
// counts; TfIdf rows are L2-normalized (all-zero rows stay zero).
struct DocTermMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> row_ptr;  // size n_rows + 1
    std::vector<int> col;
    std::vector<double> val;
    Weighting weighting = Weighting::Count;

    std::size_t nnz() const { return col.size(); }
};

// Tokens with df >= min_df; if max_features is set, the top-df tokens with
// lexicographic tie-break. Throws on an empty corpus or max_features == 0.
Vocabulary build_vocab(const TokenDocs& corpus, std::size_t min_df = 1,
                       std::optional<std::size_t> max_features = std::nullopt);

// Out-of-vocabulary tokens are ignored.
DocTermMatrix count_vectorize(const TokenDocs& docs, const Vocabulary& vocab);

// weight = tf * (ln((1+N)/(1+df)) + 1), rows L2-normalized. df/N come from
// the vocabulary's fitting corpus, so transforming new documents is safe.
DocTermMatrix tfidf_vectorize(const TokenDocs& docs, const Vocabulary& vocab);

double idf(const Vocabulary& vocab, int token_index);

// Coordinate-triplet persistence: `row,col,value` lines. The vocabulary
// sidecar is `token,index,df,N`. Reload is bit-exact.
void save_matrix(const DocTermMatrix& m, std::ostream& out);
DocTermMatrix load_matrix(std::istream& in);
void save_vocab(const Vocabulary& v, std::ostream& out);
Vocabulary load_vocab(std::istream& in);

// FNV-1a over the serialized vocabulary; referenced by model artifacts.
std::string vocab_content_hash(const Vocabulary& v);

}  // namespace stocklab
