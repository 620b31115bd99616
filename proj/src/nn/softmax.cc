#include "radnlp/nn/softmax.h"

#include <algorithm>
#include <cmath>

#include "radnlp/error.h"

namespace radnlp::nn {

void softmax(std::span<const double> logits, std::span<double> out) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - m);
    sum += out[i];
  }
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] /= sum;
}

XentResult softmax_xent(std::span<const double> logits, std::size_t target) {
  if (logits.size() < 2) throw Error("softmax_xent: need at least two classes");
  if (target >= logits.size()) throw Error("softmax_xent: target out of range");
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - m);
  const double log_z = m + std::log(sum);

  XentResult r;
  r.loss = log_z - logits[target];
  r.grad.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    r.grad[i] = std::exp(logits[i] - log_z);
  }
  r.grad[target] -= 1.0;
  return r;
}

}  // namespace radnlp::nn
