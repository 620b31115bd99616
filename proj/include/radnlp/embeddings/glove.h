#pragma once

#include <cstdint>
#include <vector>

#include "radnlp/embeddings/cooccurrence.h"
#include "radnlp/embeddings/ontology.h"
#include "radnlp/nn/matrix.h"

namespace radnlp::embeddings {

// f(x) = min(1, (x / x_max)^exponent); f(0) = 0.
double glove_weight(double x, double x_max = 100.0, double exponent = 0.75);

struct GloveParams {
  nn::Matrix w;        // |V| x d word vectors
  nn::Matrix w_ctx;    // |V| x d context vectors
  nn::Matrix b;        // |V| x 1
  nn::Matrix b_ctx;    // |V| x 1

  GloveParams() = default;
  GloveParams(std::size_t vocab_size, std::size_t dim);  // zeros
  // Vectors uniform in (-0.5/d, 0.5/d), biases zero.
  static GloveParams initialized(std::size_t vocab_size, std::size_t dim, std::uint64_t seed);

  std::size_t vocab_size() const { return w.rows(); }
  std::size_t dim() const { return w.cols(); }
  // (w + w_ctx) / 2.
  nn::Matrix final_embedding() const;
};

struct GloveOptions {
  std::size_t dim = 50;
  std::size_t epochs = 25;
  double learning_rate = 0.05;
  double x_max = 100.0;
  double exponent = 0.75;
  double alpha = 0.0;  // ontology penalty weight; 0 is plain GloVe
  std::uint64_t seed = 1;
};

// One term f * (w_i . w_ctx_j + b_i + b_ctx_j - target)^2 and its gradient,
// accumulated into `grads` (same shapes as p).
double glove_term_loss(const GloveParams& p, std::size_t i, std::size_t j,
                       double target, double weight);
void glove_term_backward(const GloveParams& p, std::size_t i, std::size_t j,
                         double target, double weight, GloveParams& grads);

// Sum over nonzero X_ij of f(X_ij) * (w_i . w_ctx_j + b_i + b_ctx_j
// - log X_ij - alpha * sim(phi_i, phi_j))^2. `phi` may be null when alpha=0.
double glove_objective(const CooccurrenceTable& table, const GloveParams& p,
                       const GloveOptions& options, const AncestorVectors* phi = nullptr);

struct GloveResult {
  GloveParams params;
  std::vector<double> epoch_cost;  // mean term cost seen during each epoch
  nn::Matrix embedding() const { return params.final_embedding(); }
};

// AdaGrad over the nonzero entries of X, visited in a fresh seeded order
// each epoch. Throws Error on an empty table or a non-finite cost.
GloveResult glove_train(const CooccurrenceTable& table, const GloveOptions& options);

// The same loop with the regression target shifted by alpha * cos(phi_i,
// phi_j). With alpha = 0 the result is bit-identical to glove_train.
GloveResult glove_ontology_train(const CooccurrenceTable& table, const GloveOptions& options,
                                 const AncestorVectors& phi);

}  // namespace radnlp::embeddings
