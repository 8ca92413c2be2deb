#include "stocklab/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stocklab/errors.hpp"

namespace stocklab {

namespace {

Prediction from_scores(std::vector<double> scores) {
    Prediction p;
    double m = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (double s : scores) sum += std::exp(s - m);
    p.probs.resize(scores.size());
    for (std::size_t c = 0; c < scores.size(); ++c)
        p.probs[c] = std::exp(scores[c] - m) / sum;
    p.label = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[p.label]) p.label = static_cast<int>(c);
    return p;
}

}  // namespace

NaiveBayesModel train_nb(const DocTermMatrix& X, const std::vector<int>& y,
                         int num_classes, double alpha, NbVariant variant) {
    if (X.n_rows != y.size()) throw ValidationError("train_nb: rows != labels");
    if (!(alpha > 0)) throw ValidationError("train_nb: alpha must be > 0");
    const std::size_t K = static_cast<std::size_t>(num_classes);
    const std::size_t V = X.n_cols;

    std::vector<double> class_count(K, 0.0);
    for (int c : y) {
        if (c < 0 || c >= num_classes)
            throw ValidationError("train_nb: label out of range");
        class_count[static_cast<std::size_t>(c)] += 1.0;
    }
    for (std::size_t c = 0; c < K; ++c)
        if (class_count[c] == 0.0)
            throw ValidationError("train_nb: class " + std::to_string(c) +
                                  " absent from training labels");

    NaiveBayesModel m;
    m.num_classes = num_classes;
    m.variant = variant;
    m.alpha = alpha;
    m.log_prior.resize(K);
    for (std::size_t c = 0; c < K; ++c)
        m.log_prior[c] = std::log(class_count[c] / static_cast<double>(y.size()));

    if (variant == NbVariant::Multinomial) {
        std::vector<std::vector<double>> counts(K, std::vector<double>(V, 0.0));
        std::vector<double> totals(K, 0.0);
        for (std::size_t i = 0; i < X.n_rows; ++i) {
            std::size_t c = static_cast<std::size_t>(y[i]);
            for (std::size_t k = X.row_ptr[i]; k < X.row_ptr[i + 1]; ++k) {
                counts[c][static_cast<std::size_t>(X.col[k])] += X.val[k];
                totals[c] += X.val[k];
            }
        }
        m.log_lik.assign(K, std::vector<double>(V, 0.0));
        for (std::size_t c = 0; c < K; ++c) {
            double denom = totals[c] + alpha * static_cast<double>(V);
            for (std::size_t t = 0; t < V; ++t)
                m.log_lik[c][t] = std::log((counts[c][t] + alpha) / denom);
        }
    } else {
        // document-presence likelihoods with Laplace smoothing
        std::vector<std::vector<double>> present(K, std::vector<double>(V, 0.0));
        for (std::size_t i = 0; i < X.n_rows; ++i) {
            std::size_t c = static_cast<std::size_t>(y[i]);
            for (std::size_t k = X.row_ptr[i]; k < X.row_ptr[i + 1]; ++k)
                if (X.val[k] > 0) present[c][static_cast<std::size_t>(X.col[k])] += 1.0;
        }
        m.log_lik.assign(K, std::vector<double>(V, 0.0));
        m.log_lik_absent.assign(K, std::vector<double>(V, 0.0));
        m.absent_sum.assign(K, 0.0);
        for (std::size_t c = 0; c < K; ++c) {
            double denom = class_count[c] + 2.0 * alpha;
            for (std::size_t t = 0; t < V; ++t) {
                double p = (present[c][t] + alpha) / denom;
                m.log_lik[c][t] = std::log(p);
                m.log_lik_absent[c][t] = std::log1p(-p);
                m.absent_sum[c] += m.log_lik_absent[c][t];
            }
        }
    }
    return m;
}

Prediction predict_nb(const NaiveBayesModel& model, const DocTermMatrix& X,
                      std::size_t row) {
    const std::size_t K = static_cast<std::size_t>(model.num_classes);
    std::vector<double> scores(K);
    for (std::size_t c = 0; c < K; ++c) {
        double s = model.log_prior[c];
        if (model.variant == NbVariant::Multinomial) {
            for (std::size_t k = X.row_ptr[row]; k < X.row_ptr[row + 1]; ++k)
                s += X.val[k] * model.log_lik[c][static_cast<std::size_t>(X.col[k])];
        } else {
            s += model.absent_sum[c];
            for (std::size_t k = X.row_ptr[row]; k < X.row_ptr[row + 1]; ++k) {
                if (X.val[k] <= 0) continue;
                std::size_t t = static_cast<std::size_t>(X.col[k]);
                s += model.log_lik[c][t] - model.log_lik_absent[c][t];
            }
        }
        scores[c] = s;
    }
    return from_scores(std::move(scores));
}

void loss_and_gradient(const WeightMatrix& weights, const DocTermMatrix& X,
                       const std::vector<int>& y, int num_classes, double lambda,
                       double& loss, WeightMatrix& grad) {
    if (X.n_rows != y.size()) throw ValidationError("loss_and_gradient: rows != labels");
    for (const auto& row : weights)
        if (row.size() != X.n_cols + 1)
            throw ValidationError("loss_and_gradient: weight width != V+1");
    CscMatrix csc = to_csc(X);
    kernels::par::lr_loss_grad(X, csc, y, weights, num_classes, lambda, loss, grad);
}

LogisticModel train_lr(const DocTermMatrix& X, const std::vector<int>& y, int num_classes,
                       const LrConfig& config) {
    if (X.n_rows != y.size()) throw ValidationError("train_lr: rows != labels");
    if (!(config.step > 0)) throw ValidationError("train_lr: step must be > 0");
    std::vector<double> seen(static_cast<std::size_t>(num_classes), 0.0);
    for (int c : y) {
        if (c < 0 || c >= num_classes) throw ValidationError("train_lr: label out of range");
        seen[static_cast<std::size_t>(c)] += 1.0;
    }
    for (int c = 0; c < num_classes; ++c)
        if (seen[static_cast<std::size_t>(c)] == 0.0)
            throw ValidationError("train_lr: class " + std::to_string(c) +
                                  " absent from training labels");

    LogisticModel m;
    m.num_classes = num_classes;
    m.config = config;
    std::size_t rows = num_classes == 2 ? 1 : static_cast<std::size_t>(num_classes);
    m.weights.assign(rows, std::vector<double>(X.n_cols + 1, 0.0));

    CscMatrix csc = to_csc(X);
    WeightMatrix grad;
    double prev_loss = 0.0;
    kernels::par::lr_loss_grad(X, csc, y, m.weights, num_classes, config.lambda, prev_loss,
                               grad);
    m.final_loss = prev_loss;
    for (std::size_t it = 1; it <= config.max_iters; ++it) {
        for (std::size_t c = 0; c < rows; ++c)
            for (std::size_t j = 0; j <= X.n_cols; ++j)
                m.weights[c][j] -= config.step * grad[c][j];
        double loss = 0.0;
        kernels::par::lr_loss_grad(X, csc, y, m.weights, num_classes, config.lambda, loss,
                                   grad);
        if (!std::isfinite(loss))
            throw ComputeError("train_lr diverged at iteration " + std::to_string(it) +
                               " (step size too large)");
        if (loss > prev_loss * (1.0 + 1e-12) + 1e-15)
            throw ComputeError("train_lr loss increased at iteration " + std::to_string(it) +
                               " (step size above stability bound)");
        m.iterations = it;
        m.final_loss = loss;
        if (std::abs(prev_loss - loss) < config.tol) break;
        prev_loss = loss;
    }
    return m;
}

Prediction predict_lr(const LogisticModel& model, const DocTermMatrix& X, std::size_t row) {
    std::vector<double> s = kernels::scores_row(X, row, model.weights);
    if (model.weights.size() == 1) {
        double p = 1.0 / (1.0 + std::exp(-s[0]));
        Prediction out;
        out.probs = {1.0 - p, p};
        out.label = p > 1.0 - p ? 1 : 0;  // ties go to class 0
        return out;
    }
    return from_scores(std::move(s));
}

Prediction ModelArtifact::predict(const DocTermMatrix& X, std::size_t row) const {
    return model_kind == "nb" ? predict_nb(nb, X, row) : predict_lr(lr, X, row);
}

namespace {

void write_array(std::ostream& out, const char* name, const std::vector<double>& v) {
    out << name << ' ' << v.size();
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof(buf), " %.17g", x);
        out << buf;
    }
    out << '\n';
}

std::vector<double> read_array(std::istringstream& line) {
    std::size_t n = 0;
    line >> n;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) line >> v[i];
    return v;
}

}  // namespace

void save_model(const ModelArtifact& m, std::ostream& out) {
    out << "stocklab-model v1\n";
    out << "kind " << m.model_kind << '\n';
    out << "weighting " << (m.weighting == Weighting::Count ? "count" : "tfidf") << '\n';
    out << "scheme "
        << (m.scheme == SchemeKind::Binary ? "binary"
                                           : m.scheme == SchemeKind::PctTwo ? "pct2" : "pct3")
        << '\n';
    out << "alignment " << (m.alignment == Alignment::SameDay ? "same-day" : "prev-day")
        << '\n';
    out << "tz_offset " << m.tz_offset << '\n';
    out << "split_seed " << m.split_seed << '\n';
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", m.train_fraction);
    out << "train_fraction " << buf << '\n';
    out << "vocab_hash " << m.vocab_hash << '\n';
    if (m.model_kind == "nb") {
        out << "nb_classes " << m.nb.num_classes << '\n';
        out << "nb_variant "
            << (m.nb.variant == NbVariant::Multinomial ? "multinomial" : "bernoulli") << '\n';
        std::snprintf(buf, sizeof(buf), "%.17g", m.nb.alpha);
        out << "nb_alpha " << buf << '\n';
        write_array(out, "log_prior", m.nb.log_prior);
        for (const auto& row : m.nb.log_lik) write_array(out, "log_lik", row);
        for (const auto& row : m.nb.log_lik_absent) write_array(out, "log_lik_absent", row);
        if (!m.nb.absent_sum.empty()) write_array(out, "absent_sum", m.nb.absent_sum);
    } else {
        out << "lr_classes " << m.lr.num_classes << '\n';
        std::snprintf(buf, sizeof(buf), "%.17g", m.lr.config.step);
        out << "lr_step " << buf << '\n';
        std::snprintf(buf, sizeof(buf), "%.17g", m.lr.config.tol);
        out << "lr_tol " << buf << '\n';
        std::snprintf(buf, sizeof(buf), "%.17g", m.lr.config.lambda);
        out << "lr_lambda " << buf << '\n';
        out << "lr_max_iters " << m.lr.config.max_iters << '\n';
        out << "lr_iterations " << m.lr.iterations << '\n';
        std::snprintf(buf, sizeof(buf), "%.17g", m.lr.final_loss);
        out << "lr_final_loss " << buf << '\n';
        for (const auto& row : m.lr.weights) write_array(out, "weights", row);
    }
}

ModelArtifact load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "stocklab-model v1")
        throw ValidationError("model artifact: bad magic line");
    ModelArtifact m;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "kind") ls >> m.model_kind;
        else if (key == "weighting") {
            std::string w;
            ls >> w;
            m.weighting = w == "count" ? Weighting::Count : Weighting::TfIdf;
        } else if (key == "scheme") {
            std::string s;
            ls >> s;
            m.scheme = s == "binary" ? SchemeKind::Binary
                                     : s == "pct2" ? SchemeKind::PctTwo : SchemeKind::PctThree;
        } else if (key == "alignment") {
            std::string a;
            ls >> a;
            m.alignment = a == "same-day" ? Alignment::SameDay : Alignment::PrevDay;
        } else if (key == "tz_offset") ls >> m.tz_offset;
        else if (key == "split_seed") ls >> m.split_seed;
        else if (key == "train_fraction") ls >> m.train_fraction;
        else if (key == "vocab_hash") ls >> m.vocab_hash;
        else if (key == "nb_classes") ls >> m.nb.num_classes;
        else if (key == "nb_variant") {
            std::string v;
            ls >> v;
            m.nb.variant = v == "multinomial" ? NbVariant::Multinomial : NbVariant::Bernoulli;
        } else if (key == "nb_alpha") ls >> m.nb.alpha;
        else if (key == "log_prior") m.nb.log_prior = read_array(ls);
        else if (key == "log_lik") m.nb.log_lik.push_back(read_array(ls));
        else if (key == "log_lik_absent") m.nb.log_lik_absent.push_back(read_array(ls));
        else if (key == "absent_sum") m.nb.absent_sum = read_array(ls);
        else if (key == "lr_classes") ls >> m.lr.num_classes;
        else if (key == "lr_step") ls >> m.lr.config.step;
        else if (key == "lr_tol") ls >> m.lr.config.tol;
        else if (key == "lr_lambda") ls >> m.lr.config.lambda;
        else if (key == "lr_max_iters") ls >> m.lr.config.max_iters;
        else if (key == "lr_iterations") ls >> m.lr.iterations;
        else if (key == "lr_final_loss") ls >> m.lr.final_loss;
        else if (key == "weights") m.lr.weights.push_back(read_array(ls));
        else throw ValidationError("model artifact: unknown key '" + key + "'");
    }
    if (m.model_kind != "nb" && m.model_kind != "lr")
        throw ValidationError("model artifact: missing or bad kind");
    return m;
}

}  // namespace stocklab
