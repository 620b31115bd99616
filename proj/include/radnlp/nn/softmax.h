#pragma once

#include <cstddef>
#include <span>

#include "radnlp/nn/matrix.h"

namespace radnlp::nn {

// Max-subtracted softmax; `out` may alias `logits`.
void softmax(std::span<const double> logits, std::span<double> out);

struct XentResult {
  double loss = 0.0;
  Vector grad;  // softmax(logits) - onehot(target)
};

// -log softmax(logits)[target]. Throws Error if target is out of range or
// fewer than two classes are given.
XentResult softmax_xent(std::span<const double> logits, std::size_t target);

}  // namespace radnlp::nn
