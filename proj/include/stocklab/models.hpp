#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stocklab/features.hpp"
#include "stocklab/kernels.hpp"
#include "stocklab/labelling.hpp"

namespace stocklab {

enum class NbVariant { Multinomial, Bernoulli };

struct NaiveBayesModel {
    int num_classes = 2;
    NbVariant variant = NbVariant::Multinomial;
    double alpha = 1.0;
    std::vector<double> log_prior;                  // K
    std::vector<std::vector<double>> log_lik;       // K x V; Bernoulli: ln p(t present|c)
    std::vector<std::vector<double>> log_lik_absent;  // Bernoulli only: ln(1 - p)
    std::vector<double> absent_sum;                 // Bernoulli: per-class sum of ln(1-p)
};

struct Prediction {
    int label = 0;
    std::vector<double> probs;  // sums to 1
};

// Laplace-smoothed class-conditional likelihoods from count features.
// TfIdf weights are accepted and treated as fractional counts.
NaiveBayesModel train_nb(const DocTermMatrix& X, const std::vector<int>& y,
                         int num_classes, double alpha, NbVariant variant);

Prediction predict_nb(const NaiveBayesModel& model, const DocTermMatrix& X,
                      std::size_t row);

struct LrConfig {
    double step = 0.1;
    std::size_t max_iters = 1000;
    double tol = 1e-6;    // stop when |loss delta| < tol
    double lambda = 1.0;  // L2 strength; penalty is lambda/(2n) * ||W||^2, bias excluded
};

struct LogisticModel {
    int num_classes = 2;
    WeightMatrix weights;  // 1 x (V+1) sigmoid for K=2, K x (V+1) softmax otherwise
    LrConfig config;
    double final_loss = 0.0;
    std::size_t iterations = 0;
};

// Full-batch gradient descent from zero weights. Deterministic; loss is
// checked non-increasing every iteration. Throws ComputeError naming the
// iteration on divergence.
LogisticModel train_lr(const DocTermMatrix& X, const std::vector<int>& y, int num_classes,
                       const LrConfig& config);

// Regularized mean cross-entropy and exact gradient at the given weights.
void loss_and_gradient(const WeightMatrix& weights, const DocTermMatrix& X,
                       const std::vector<int>& y, int num_classes, double lambda,
                       double& loss, WeightMatrix& grad);

Prediction predict_lr(const LogisticModel& model, const DocTermMatrix& X, std::size_t row);

// Self-describing model artifact; reload is bit-exact.
struct ModelArtifact {
    std::string model_kind;  // "nb" | "lr"
    NaiveBayesModel nb;
    LogisticModel lr;
    Weighting weighting = Weighting::TfIdf;
    SchemeKind scheme = SchemeKind::Binary;
    Alignment alignment = Alignment::SameDay;
    int tz_offset = 0;
    std::uint64_t split_seed = 0;
    double train_fraction = 0.9;
    std::string vocab_hash;

    Prediction predict(const DocTermMatrix& X, std::size_t row) const;
};

void save_model(const ModelArtifact& m, std::ostream& out);
ModelArtifact load_model(std::istream& in);

}  // namespace stocklab
