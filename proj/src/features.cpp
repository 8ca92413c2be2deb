#include "stocklab/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>

#include "stocklab/csv.hpp"
#include "stocklab/errors.hpp"
#include "stocklab/kernels.hpp"

namespace stocklab {

Vocabulary build_vocab(const TokenDocs& corpus, std::size_t min_df,
                       std::optional<std::size_t> max_features) {
    if (corpus.empty()) throw ValidationError("build_vocab: empty corpus");
    if (max_features && *max_features == 0)
        throw ValidationError("build_vocab: max_features must be positive");

    std::map<std::string, std::size_t> df;
    for (const auto& doc : corpus) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (const auto& t : seen) ++df[t];
    }

    std::vector<std::pair<std::string, std::size_t>> kept;
    for (const auto& [token, d] : df)
        if (d >= min_df) kept.emplace_back(token, d);

    if (max_features && kept.size() > *max_features) {
        // top df, lexicographic tie-break (kept is already lexicographic)
        std::stable_sort(kept.begin(), kept.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        kept.resize(*max_features);
        std::sort(kept.begin(), kept.end());
    }

    Vocabulary v;
    v.doc_count = corpus.size();
    for (const auto& [token, d] : kept) {
        v.index.emplace(token, static_cast<int>(v.tokens.size()));
        v.tokens.push_back(token);
        v.df.push_back(d);
    }
    return v;
}

double idf(const Vocabulary& vocab, int token_index) {
    double n = static_cast<double>(vocab.doc_count);
    double d = static_cast<double>(vocab.df[static_cast<std::size_t>(token_index)]);
    return std::log((1.0 + n) / (1.0 + d)) + 1.0;
}

namespace {

DocTermMatrix assemble(const TokenDocs& docs, const Vocabulary& vocab, Weighting w) {
    auto rows = kernels::par::vectorize_rows(docs, vocab, w);
    DocTermMatrix m;
    m.weighting = w;
    m.n_rows = docs.size();
    m.n_cols = static_cast<std::size_t>(vocab.size());
    m.row_ptr.reserve(docs.size() + 1);
    m.row_ptr.push_back(0);
    for (const auto& row : rows) {
        for (const auto& [c, v] : row) {
            m.col.push_back(c);
            m.val.push_back(v);
        }
        m.row_ptr.push_back(m.col.size());
    }
    return m;
}

}  // namespace

DocTermMatrix count_vectorize(const TokenDocs& docs, const Vocabulary& vocab) {
    return assemble(docs, vocab, Weighting::Count);
}

DocTermMatrix tfidf_vectorize(const TokenDocs& docs, const Vocabulary& vocab) {
    return assemble(docs, vocab, Weighting::TfIdf);
}

void save_matrix(const DocTermMatrix& m, std::ostream& out) {
    out << "rows,cols,weighting\n"
        << m.n_rows << ',' << m.n_cols << ','
        << (m.weighting == Weighting::Count ? "count" : "tfidf") << '\n';
    out << "row,col,value\n";
    char buf[48];
    for (std::size_t r = 0; r < m.n_rows; ++r) {
        for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g\n", r, m.col[k], m.val[k]);
            out << buf;
        }
    }
}

DocTermMatrix load_matrix(std::istream& in) {
    std::vector<std::string> f;
    if (!csv::read_record(in, f) || f != std::vector<std::string>{"rows", "cols", "weighting"})
        throw ValidationError("matrix file: bad shape header");
    if (!csv::read_record(in, f) || f.size() != 3)
        throw ValidationError("matrix file: bad shape row");
    DocTermMatrix m;
    m.n_rows = std::stoull(f[0]);
    m.n_cols = std::stoull(f[1]);
    if (f[2] == "count") m.weighting = Weighting::Count;
    else if (f[2] == "tfidf") m.weighting = Weighting::TfIdf;
    else throw ValidationError("matrix file: unknown weighting '" + f[2] + "'");
    if (!csv::read_record(in, f) || f != std::vector<std::string>{"row", "col", "value"})
        throw ValidationError("matrix file: bad triplet header");
    std::size_t cur = 0;
    m.row_ptr.assign(1, 0);
    while (csv::read_record(in, f)) {
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 3) throw ValidationError("matrix file: bad triplet row");
        std::size_t r = std::stoull(f[0]);
        if (r < cur) throw ValidationError("matrix file: rows out of order");
        while (cur < r) {
            m.row_ptr.push_back(m.col.size());
            ++cur;
        }
        m.col.push_back(std::stoi(f[1]));
        m.val.push_back(std::stod(f[2]));
    }
    while (cur < m.n_rows) {
        m.row_ptr.push_back(m.col.size());
        ++cur;
    }
    return m;
}

void save_vocab(const Vocabulary& v, std::ostream& out) {
    out << "token,index,df,N\n";
    for (std::size_t i = 0; i < v.tokens.size(); ++i)
        out << csv::quote(v.tokens[i]) << ',' << i << ',' << v.df[i] << ',' << v.doc_count
            << '\n';
}

Vocabulary load_vocab(std::istream& in) {
    std::vector<std::string> f;
    if (!csv::read_record(in, f) ||
        f != std::vector<std::string>{"token", "index", "df", "N"})
        throw ValidationError("vocab file: bad header");
    Vocabulary v;
    while (csv::read_record(in, f)) {
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 4) throw ValidationError("vocab file: bad row");
        int idx = std::stoi(f[1]);
        if (idx != static_cast<int>(v.tokens.size()))
            throw ValidationError("vocab file: indices not dense");
        v.index.emplace(f[0], idx);
        v.tokens.push_back(f[0]);
        v.df.push_back(std::stoull(f[2]));
        v.doc_count = std::stoull(f[3]);
    }
    return v;
}

std::string vocab_content_hash(const Vocabulary& v) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    };
    std::uint64_t n = v.doc_count;
    mix(&n, sizeof(n));
    for (std::size_t i = 0; i < v.tokens.size(); ++i) {
        mix(v.tokens[i].data(), v.tokens[i].size());
        std::uint64_t d = v.df[i];
        mix(&d, sizeof(d));
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace stocklab
