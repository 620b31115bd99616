#pragma once

#include <string>
#include <vector>

#include "radnlp/nn/matrix.h"

namespace radnlp::nn {

struct ParamRef {
  std::string name;
  Matrix* value = nullptr;
};

struct ConstParamRef {
  std::string name;
  const Matrix* value = nullptr;
};

using ParamList = std::vector<ParamRef>;
using ConstParamList = std::vector<ConstParamRef>;

// A trainable tensor together with its gradient buffer.
struct ParamSlot {
  std::string name;
  Matrix* value = nullptr;
  Matrix* grad = nullptr;
};

// Pairs parameters with same-named gradients; throws Error when the lists
// differ in names or shapes.
std::vector<ParamSlot> zip_slots(const ParamList& params, const ParamList& grads);

}  // namespace radnlp::nn
