#include "radnlp/embeddings/glove.h"

#include <cmath>
#include <numeric>

#include "radnlp/error.h"
#include "radnlp/nn/optim.h"
#include "radnlp/nn/random.h"

namespace radnlp::embeddings {

double glove_weight(double x, double x_max, double exponent) {
  if (x <= 0.0) return 0.0;
  if (x >= x_max) return 1.0;
  return std::pow(x / x_max, exponent);
}

GloveParams::GloveParams(std::size_t vocab_size, std::size_t dim)
    : w(vocab_size, dim), w_ctx(vocab_size, dim), b(vocab_size, 1), b_ctx(vocab_size, 1) {}

GloveParams GloveParams::initialized(std::size_t vocab_size, std::size_t dim,
                                     std::uint64_t seed) {
  if (vocab_size == 0 || dim == 0) throw Error("glove: empty shape");
  GloveParams p(vocab_size, dim);
  nn::Rng rng(seed);
  const double r = 0.5 / static_cast<double>(dim);
  for (double& v : p.w.values()) v = nn::uniform_open(rng, -r, r);
  for (double& v : p.w_ctx.values()) v = nn::uniform_open(rng, -r, r);
  return p;
}

nn::Matrix GloveParams::final_embedding() const {
  nn::Matrix out(w.rows(), w.cols());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (w[i] + w_ctx[i]);
  return out;
}

namespace {

double residual(const GloveParams& p, std::size_t i, std::size_t j, double target) {
  return nn::dot(p.w.row(i), p.w_ctx.row(j)) + p.b[i] + p.b_ctx[j] - target;
}

struct Entry {
  std::size_t i, j;
  double target;
  double weight;
};

std::vector<Entry> entries(const CooccurrenceTable& table, const GloveOptions& o,
                           const AncestorVectors* phi) {
  std::vector<Entry> out;
  out.reserve(table.counts.size());
  for (const auto& [key, x] : table.counts) {
    if (x <= 0.0) continue;
    double target = std::log(x);
    if (o.alpha != 0.0) {
      if (!phi) throw Error("glove: alpha > 0 needs ancestor vectors");
      target += o.alpha * phi->similarity(key.first, key.second);
    }
    out.push_back({key.first, key.second, target, glove_weight(x, o.x_max, o.exponent)});
  }
  return out;
}

GloveResult train(const CooccurrenceTable& table, const GloveOptions& o,
                  const AncestorVectors* phi) {
  if (table.empty()) throw Error("glove: empty co-occurrence table");
  if (o.alpha < 0.0) throw Error("glove: alpha must be >= 0");
  if (o.learning_rate <= 0.0) throw Error("glove: learning rate must be > 0");
  if (phi && phi->phi.size() != table.vocab_size) {
    throw Error("glove: ancestor vectors do not match the vocabulary");
  }
  const auto terms = entries(table, o, phi);
  GloveResult result;
  GloveParams& p = result.params;
  p = GloveParams::initialized(table.vocab_size, o.dim, o.seed);
  GloveParams acc(table.vocab_size, o.dim);
  nn::Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t d = o.dim;
  std::vector<double> gw(d), gc(d);

  for (std::size_t epoch = 0; epoch < o.epochs; ++epoch) {
    nn::shuffle(order, rng);
    double total = 0.0;
    for (std::size_t k : order) {
      const Entry& e = terms[k];
      const double diff = residual(p, e.i, e.j, e.target);
      const double cost = e.weight * diff * diff;
      if (!std::isfinite(cost)) {
        throw Error("glove: non-finite cost in epoch " + std::to_string(epoch + 1));
      }
      total += cost;
      const double g = 2.0 * e.weight * diff;
      auto wi = p.w.row(e.i);
      auto cj = p.w_ctx.row(e.j);
      for (std::size_t c = 0; c < d; ++c) {
        gw[c] = g * cj[c];
        gc[c] = g * wi[c];
      }
      nn::adagrad_update(wi, acc.w.row(e.i), gw, o.learning_rate, nn::kAdaGradEps);
      nn::adagrad_update(cj, acc.w_ctx.row(e.j), gc, o.learning_rate, nn::kAdaGradEps);
      const double gb[1] = {g};
      nn::adagrad_update(p.b.row(e.i), acc.b.row(e.i), gb, o.learning_rate, nn::kAdaGradEps);
      nn::adagrad_update(p.b_ctx.row(e.j), acc.b_ctx.row(e.j), gb, o.learning_rate,
                         nn::kAdaGradEps);
    }
    result.epoch_cost.push_back(total / static_cast<double>(terms.size()));
  }
  return result;
}

}  // namespace

double glove_term_loss(const GloveParams& p, std::size_t i, std::size_t j, double target,
                       double weight) {
  const double diff = residual(p, i, j, target);
  return weight * diff * diff;
}

void glove_term_backward(const GloveParams& p, std::size_t i, std::size_t j, double target,
                         double weight, GloveParams& grads) {
  const double g = 2.0 * weight * residual(p, i, j, target);
  nn::axpy(g, p.w_ctx.row(j), grads.w.row(i));
  nn::axpy(g, p.w.row(i), grads.w_ctx.row(j));
  grads.b[i] += g;
  grads.b_ctx[j] += g;
}

double glove_objective(const CooccurrenceTable& table, const GloveParams& p,
                       const GloveOptions& options, const AncestorVectors* phi) {
  double total = 0.0;
  for (const auto& e : entries(table, options, phi)) {
    total += glove_term_loss(p, e.i, e.j, e.target, e.weight);
  }
  return total;
}

GloveResult glove_train(const CooccurrenceTable& table, const GloveOptions& options) {
  GloveOptions plain = options;
  plain.alpha = 0.0;
  return train(table, plain, nullptr);
}

GloveResult glove_ontology_train(const CooccurrenceTable& table, const GloveOptions& options,
                                 const AncestorVectors& phi) {
  return train(table, options, &phi);
}

}  // namespace radnlp::embeddings
