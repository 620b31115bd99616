#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "radnlp/nn/params.h"

namespace radnlp::nn {

struct GradCheckOptions {
  double step = 1e-5;
  // Relative error of one entry is |a - n| / max(|a|, |n|, denominator_floor),
  // so entries whose true gradient is near zero are judged absolutely.
  double denominator_floor = 1e-6;
};

struct TensorGradError {
  std::string name;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t worst_index = 0;
};

struct GradCheckReport {
  std::vector<TensorGradError> tensors;

  double max_rel_error() const;
  bool passed(double tolerance) const { return max_rel_error() < tolerance; }
  std::string summary() const;
};

// Compares the analytic gradients already stored in slot.grad against
// central differences of `loss`, which must read the current slot.value
// contents on every call. Values are restored afterwards.
GradCheckReport grad_check(const std::function<double()>& loss,
                           std::span<const ParamSlot> slots,
                           const GradCheckOptions& options = {});

}  // namespace radnlp::nn
